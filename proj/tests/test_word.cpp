#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(w("aA").empty());
  CHECK(to_string(w("abBa")) == "aa");
  CHECK(to_string(w("abA")) == "abA");
  CHECK(to_string(Word::reduce({Letter{1, false}, Letter{2, false}, Letter{2, true}, Letter{1, true}}))
            .empty());
}

TEST_CASE("reduce agrees with a naive stack oracle and is idempotent") {
  SeededRng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::string raw = random_letters(rng, 3, rng.below(16));
    const Word r = parse_word(raw);
    CHECK(to_string(r) == naive_reduce(raw));
    CHECK(Word::reduce(r.letters()) == r);
    CHECK(r.size() <= raw.size());
    for (std::size_t i = 1; i < r.size(); ++i) CHECK_FALSE(r[i - 1].cancels(r[i]));
  }
}

TEST_CASE("multiply examples") {
  CHECK(multiply(Word{}, w("ab")) == w("ab"));
  CHECK(to_string(multiply(w("ab"), w("Ba"))) == "aa");
  CHECK(multiply(w("abAB"), inverse(w("abAB"))).empty());
  CHECK(to_string(product(w("a"), w("b"), w("B"), w("A"))).empty());
}

TEST_CASE("multiply is associative on ball(3) triples") {
  const auto ball = f2().ball(3);
  SeededRng rng(5);
  for (int k = 0; k < 3000; ++k) {
    const Word& u = ball[rng.below(ball.size())];
    const Word& v = ball[rng.below(ball.size())];
    const Word& x = ball[rng.below(ball.size())];
    CHECK(multiply(multiply(u, v), x) == multiply(u, multiply(v, x)));
  }
}

TEST_CASE("inverse reverses and flips") {
  CHECK(inverse(Word{}).empty());
  CHECK(to_string(inverse(w("aB"))) == "bA");
  SeededRng rng(2);
  for (int k = 0; k < 500; ++k) {
    const Word x = parse_word(random_letters(rng, 2, 10));
    CHECK(inverse(inverse(x)) == x);
    CHECK(multiply(x, inverse(x)).empty());
  }
}

TEST_CASE("power") {
  CHECK(to_string(power(w("ab"), 3)) == "ababab");
  CHECK(to_string(power(w("ab"), -2)) == "BABA");
  CHECK(power(w("ab"), 0).empty());
}

TEST_CASE("shortlex order: length first, then a < A < b < B") {
  CHECK(w("b") < w("aa"));
  CHECK(w("a") < w("A"));
  CHECK(w("A") < w("b"));
  CHECK(w("ab") < w("aB"));
  CHECK(Word{} < w("a"));
}

TEST_CASE("serialization round-trips and rejects bad letters") {
  CHECK(to_string(w("")).empty());
  CHECK(to_string(w("abA")) == "abA");
  CHECK_THROWS_AS(parse_word("a1"), Error);
  CHECK_THROWS_AS(Word::reduce({Letter{0, false}}), Error);
}

TEST_CASE("cyclic reduction and subwords") {
  CHECK(w("ab").cyclically_reduced());
  CHECK_FALSE(w("abA").cyclically_reduced());
  CHECK(w("a").cyclically_reduced());
  CHECK(to_string(w("abab").subword(1, 2)) == "ba");
  CHECK(w("abc").max_index() == 3);
  CHECK(Word{}.max_index() == 0);
}
