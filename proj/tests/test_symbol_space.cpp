#include "symdyn/errors.hpp"
#include "symdyn/symbol_space.hpp"

#include <doctest.h>

#include <random>

using namespace symdyn;

namespace {

Alphabet digits_alphabet(int m) {
  std::vector<Symbol> s;
  for (int k = 0; k < m; ++k) s.push_back(std::to_string(k));
  return Alphabet(s);
}

// Encoding sum, evaluated term by term without Horner's scheme.
Rational naive_sum(const Digits& d, int m) {
  Rational x = 0;
  for (std::size_t k = 0; k < d.size(); ++k) x += Rational(d[k]) * power(m, -static_cast<int>(k + 1));
  return x;
}

}  // namespace

TEST_CASE("alphabet and ordering validation") {
  CHECK_THROWS_AS(Alphabet({"a"}), DomainError);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), DomainError);
  CHECK_THROWS_AS(Alphabet({"a", "b"}, "c"), DomainError);
  const Alphabet ab({"a", "b"}, "a");
  CHECK_THROWS_AS(Ordering(ab, {{"a", 0}, {"b", 0}}), DomainError);
  CHECK_THROWS_AS(Ordering(ab, {{"a", 1}, {"b", 0}}, true), DomainError);
  CHECK_THROWS_AS(Ordering(ab, {{"a", 0}}), DomainError);
  const Ordering ord(ab, {{"a", 1}, {"b", 0}});
  CHECK(ord.digit("a") == 1);
  CHECK(ord.symbol(0) == "b");
  CHECK_THROWS_AS(ord.digit("c"), DomainError);
}

TEST_CASE("godel_encode examples") {
  // m = 2, a -> 0, b -> 1: "b a a a ..." encodes to 1/2
  const Alphabet ab({"a", "b"}, "a");
  const Ordering ord(ab, {{"a", 0}, {"b", 1}}, true);
  CHECK(godel_encode(OneSidedSequence{ab, {"b"}, {}}, ord) == Rational(1, 2));
  CHECK(godel_encode(OneSidedSequence{ab, {"b", "a", "a"}, {"a"}}, ord) == Rational(1, 2));
  CHECK(godel_encode(Word{}, ord) == 0);
  const Ordering id3 = Ordering::identity(digits_alphabet(3));
  CHECK(godel_encode(Word{"1", "0", "2"}, id3) == Rational(11, 27));
  CHECK_THROWS_AS(godel_encode(Word{"7"}, id3), DomainError);
}

TEST_CASE("godel_encode refuses non-terminating sums") {
  const Alphabet ab({"a", "b"}, "a");
  const Ordering pinned(ab, {{"a", 0}, {"b", 1}}, true);
  CHECK_THROWS_AS(godel_encode(OneSidedSequence{ab, {"a"}, {"b"}}, pinned), UnsupportedInput);
  const Ordering unpinned(ab, {{"a", 1}, {"b", 0}});
  CHECK_THROWS_AS(godel_encode(OneSidedSequence{ab, {"b"}, {}}, unpinned), UnsupportedInput);
}

TEST_CASE("godel_decode examples") {
  CHECK(godel_decode(Rational(10, 27), 3, 3) == Digits{1, 0, 1});
  CHECK(godel_decode(Rational(0), 4, 3) == Digits{0, 0, 0});
  CHECK(godel_decode(Rational(1), 3, 2) == Digits{2, 2});
  // truncation of a non-corner point
  CHECK(godel_decode(Rational(1, 2), 3, 3) == Digits{1, 1, 1});
}

TEST_CASE("encode/decode round trip is exhaustive for m <= 4, |w| <= 6") {
  for (int m = 2; m <= 4; ++m) {
    const Ordering id = Ordering::identity(digits_alphabet(m));
    for (int l = 0; l <= 6; ++l) {
      std::size_t count = 1;
      for (int k = 0; k < l; ++k) count *= static_cast<std::size_t>(m);
      for (std::size_t idx = 0; idx < count; ++idx) {
        Digits d(static_cast<std::size_t>(l));
        std::size_t v = idx;
        for (int k = l - 1; k >= 0; --k) {
          d[static_cast<std::size_t>(k)] = static_cast<int>(v % static_cast<std::size_t>(m));
          v /= static_cast<std::size_t>(m);
        }
        const Rational x = godel_encode(id.word(d), id);
        REQUIRE(x == naive_sum(d, m));
        REQUIRE(godel_decode(x, m, l) == d);
      }
    }
  }
}

TEST_CASE("ultrametric examples") {
  const Alphabet abc({"a", "b", "c"}, "a");
  auto seq = [&](Word w) { return OneSidedSequence{abc, std::move(w), {}}; };
  CHECK(ultrametric(seq({"b", "c"}), seq({"b", "c"})) == 0);
  CHECK(ultrametric(seq({"b", "c"}), seq({"b", "c", "a", "a"})) == 0);
  CHECK(ultrametric(seq({"b"}), seq({"c"})) == 1);
  CHECK(ultrametric(OneSidedSequence{abc, {"a", "b", "c"}, {"c"}}, OneSidedSequence{abc, {"a", "b", "b"}, {"c"}}) ==
        Rational(1, 9));
  // periodic tails that agree for a while: bcbc... vs bcbb...
  CHECK(ultrametric(OneSidedSequence{abc, {}, {"b", "c"}}, OneSidedSequence{abc, {"b", "c", "b"}, {"b"}}) ==
        Rational(1, 27));
  const Alphabet other({"x", "y"}, "x");
  CHECK_THROWS_AS(ultrametric(seq({"b"}), OneSidedSequence{other, {"y"}, {}}), DomainError);
}

TEST_CASE("cylinder examples") {
  const Ordering id3 = Ordering::identity(digits_alphabet(3));
  CHECK(cylinder(Word{}, id3) == Interval{0, 1});
  CHECK(cylinder(Word{"2", "0"}, id3) == Interval{Rational(6, 9), Rational(7, 9)});

  const Alphabet abc({"a", "b", "c"}, "a");
  const Ordering ord(abc, {{"a", 0}, {"b", 2}, {"c", 1}}, true);
  const Word w{"c", "b", "b"};
  const Interval iv = cylinder(w, ord);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    Word ext = w;
    int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) ext.push_back(abc.symbols()[rng() % 3]);
    REQUIRE(iv.contains(godel_encode(OneSidedSequence{abc, ext, {}}, ord)));
  }
}

TEST_CASE("recode") {
  const Permutation pi({1, 2, 0});
  CHECK(recode({0, 0, 1}, pi) == Digits{1, 1, 2});
  CHECK(recode({2, 1, 0}, Permutation::identity(3)) == Digits{2, 1, 0});
  CHECK(recode(recode({0, 2, 1, 1}, pi), pi.inverse()) == Digits{0, 2, 1, 1});
  CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), DomainError);
  CHECK_THROWS_AS(recode({3}, pi), DomainError);
  CHECK(all_permutations(4, false).size() == 24);
  CHECK(all_permutations(4, true).size() == 6);

  std::mt19937_64 rng(11);
  const auto perms = all_permutations(4, false);
  for (int k = 0; k < 500; ++k) {
    const auto& a = perms[rng() % perms.size()];
    const auto& b = perms[rng() % perms.size()];
    Digits w;
    for (int i = 0; i < 6; ++i) w.push_back(static_cast<int>(rng() % 4));
    REQUIRE(recode(w, compose(a, b)) == recode(recode(w, b), a));
  }
}

TEST_CASE("recoding_between relates two orderings") {
  const Alphabet abc({"a", "b", "c"});
  const Ordering g1(abc, {{"a", 0}, {"b", 1}, {"c", 2}});
  const Ordering g2(abc, {{"a", 2}, {"b", 0}, {"c", 1}});
  const Permutation pi = recoding_between(g1, g2);
  for (const auto& s : abc.symbols()) CHECK(pi(g1.digit(s)) == g2.digit(s));
}
