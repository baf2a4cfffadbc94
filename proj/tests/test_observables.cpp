#include "support.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/observables.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace symdyn;

namespace {

NeuralState state(std::vector<double> x) { return NeuralState{std::move(x), 0}; }

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = u(rng);
  return v;
}

// Lower-left corners of every rectangle of the window.
std::vector<PhasePoint> corners(const Window& w) {
  std::vector<PhasePoint> out;
  const auto ni = checked_power(w.m_in, w.r, 1u << 20);
  const auto nj = checked_power(w.m_st, w.l, 1u << 20);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = 0; j < nj; ++j)
      out.push_back({Rational(static_cast<long>(i), static_cast<long>(ni)),
                     Rational(static_cast<long>(j), static_cast<long>(nj))});
  return out;
}

// Interior points: corner plus a small fraction of the rectangle.
std::vector<PhasePoint> interior(const Window& w, const Rational& frac) {
  const auto ni = checked_power(w.m_in, w.r, 1u << 20);
  const auto nj = checked_power(w.m_st, w.l, 1u << 20);
  std::vector<PhasePoint> out;
  for (const auto& c : corners(w))
    out.push_back({c.y1 + frac / static_cast<long>(ni), c.y2 + frac / static_cast<long>(nj)});
  return out;
}

}  // namespace

TEST_CASE("amari") {
  CHECK(amari(state({0, 0, 0, 0})) == 0.0);
  CHECK(amari(state({1, 1, 1})) == 1.0);
  CHECK(amari(state({1, 0, 1, 0, 0})) == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
}

TEST_CASE("harmony") {
  std::vector<double> id(9, 0.0);
  id[0] = id[4] = id[8] = 1.0;
  CHECK(harmony(state({0, 0, 0}), id) == 0.0);
  CHECK(harmony(state({0.5, 0.25, 1.0}), id) == doctest::Approx(0.25 + 0.0625 + 1.0).epsilon(1e-15));
  CHECK_THROWS_AS(harmony(state({1, 2}), id), DomainError);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + rng() % 12;
    const auto x = random_vector(rng, n);
    const auto w = random_vector(rng, n * n);
    long double expect = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) expect += static_cast<long double>(x[a]) * w[a * n + b] * x[b];
    CHECK(std::abs(harmony(state(x), w) - static_cast<double>(expect)) <= 1e-12);
  }
}

TEST_CASE("dissimilarity") {
  CHECK(dissimilarity(state({0.3, 0.4}), state({0.3, 0.4})) == doctest::Approx(0.0));
  CHECK(dissimilarity(state({1, 0}), state({0, 1})) == 1.0);
  CHECK_THROWS_AS(dissimilarity(state({0, 0}), state({1, 0})), DomainError);
  CHECK_THROWS_AS(dissimilarity(state({1, 0}), state({1})), DomainError);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + rng() % 12;
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += static_cast<long double>(a[i]) * b[i];
      na += static_cast<long double>(a[i]) * a[i];
      nb += static_cast<long double>(b[i]) * b[i];
    }
    const double expect = static_cast<double>(1.0L - dot / std::sqrt(na * nb));
    CHECK(std::abs(dissimilarity(state(a), state(b)) - expect) <= 1e-12);
  }
}

TEST_CASE("step observable coefficients") {
  const Window w{2, 3, 5, 3};
  const auto spec = make_step_observable(w, 2024);
  CHECK(spec.classes.class_count == static_cast<int>(spec.coefficients.size()));
  CHECK(std::set<double>(spec.coefficients.begin(), spec.coefficients.end()).size() == spec.coefficients.size());
  for (double c : spec.coefficients) CHECK((c >= 0.0 && c <= 1.0));
  CHECK(make_step_observable(w, 2024).coefficients == spec.coefficients);
  CHECK(make_step_observable(w, 2025).coefficients != spec.coefficients);
  CHECK(spec.classes.blank_pinned);
}

TEST_CASE("step observable depends on the rectangle class only") {
  const Window w{1, 2, 3, 3};
  const auto spec = make_step_observable(w, 9);
  const auto cs = corners(w);
  const auto in = interior(w, Rational(1, 2));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    CHECK(rectangle_of(spec, cs[k]) == rectangle_of(spec, in[k]));
    CHECK(step_observable(spec, cs[k]) == step_observable(spec, in[k]));
    const auto cell = rectangle_of(spec, cs[k]);
    for (auto other : spec.classes.members(spec.classes.class_of[cell])) {
      const PhasePoint q{spec.classes.right_corner(other), spec.classes.left_corner(other)};
      CHECK(step_observable(spec, q) == step_observable(spec, cs[k]));
    }
  }
  // float lookup agrees with the exact one, also just below a grid line
  for (const auto& p : in) {
    const MclPoint f{p.y1.convert_to<double>(), p.y2.convert_to<double>()};
    CHECK(rectangle_of(spec, f) == rectangle_of(spec, p));
  }
  CHECK(rectangle_of(spec, MclPoint{1.0 / 3.0 - 1e-13, 0.0}) == rectangle_of(spec, PhasePoint{Rational(1, 3), 0}));
}

TEST_CASE("step observable factors through the MCL") {
  const auto g = test::svo_grammar();
  const auto nda = from_versatile_shift(compile_cfg_topdown(g), test::svo_encoding(g, "gamma"));
  const auto net = synthesize(nda);
  const auto spec = make_step_observable(Window{2, 3, 5, 3}, 1);
  std::mt19937_64 rng(17);
  const auto x = embed(net, {Rational(16, 27), Rational(4, 5)});
  for (int k = 0; k < 100; ++k) {
    auto y = x;
    for (std::size_t u = 2; u < y.x.size(); ++u) y.x[u] = static_cast<double>(rng() % 1000) / 1000.0;
    REQUIRE(step_observable(spec, y) == step_observable(spec, x));
  }
}

TEST_CASE("permutation pairs") {
  CHECK_THROWS_AS(PermutationPair(Permutation({1, 0, 2}), Permutation::identity(3)), DomainError);
  CHECK(all_permutation_pairs(3, 5).size() == 2 * 24);
  const PermutationPair p(Permutation({0, 2, 1}), Permutation({0, 3, 1, 2}));
  CHECK(compose(p, inverse(p)) == PermutationPair(Permutation::identity(3), Permutation::identity(4)));
}

TEST_CASE("rho_pi identity, inverse and class preservation") {
  const Window w{2, 2, 3, 3};
  const auto spec = make_step_observable(w, 4);
  const auto pts = interior(w, Rational(1, 3));
  for (const auto& pi : all_permutation_pairs(3, 3)) {
    for (const auto& p : pts) {
      const auto q = rho_pi(p, pi, w);
      REQUIRE(rho_pi(q, inverse(pi), w) == p);
      REQUIRE(spec.classes.class_of[rectangle_of(spec, q)] == spec.classes.class_of[rectangle_of(spec, p)]);
      // rigid move: offset inside the rectangle is preserved
      REQUIRE((q.y1 * 9 - floor_to_int(q.y1 * 9)) == (p.y1 * 9 - floor_to_int(p.y1 * 9)));
    }
  }
  const PermutationPair id(Permutation::identity(3), Permutation::identity(3));
  for (const auto& p : pts) CHECK(rho_pi(p, id, w) == p);
}

TEST_CASE("group law for rho and alpha") {
  // S_3 x S_3 is non-abelian, so the order of composition matters
  const Window w{1, 2, 4, 4};
  const auto pairs = all_permutation_pairs(4, 4);
  const auto pts = corners(w);
  // an observable that is not recoding invariant, so the law is informative
  const Observable<PhasePoint> f = [](const PhasePoint& p) {
    return p.y1.convert_to<double>() + 10 * p.y2.convert_to<double>();
  };
  for (const auto& pi : pairs)
    for (const auto& sigma : pairs) {
      const auto composed = compose(pi, sigma);
      const auto lhs = alpha_pi(f, composed, w);
      const auto rhs = alpha_pi(alpha_pi(f, pi, w), sigma, w);
      for (const auto& p : pts) {
        REQUIRE(rho_pi(p, composed, w) == rho_pi(rho_pi(p, sigma, w), pi, w));
        REQUIRE(lhs(p) == rhs(p));
      }
    }
  const PermutationPair id(Permutation::identity(4), Permutation::identity(4));
  for (const auto& p : pts) CHECK(alpha_pi(f, id, w)(p) == f(p));
}

TEST_CASE("the step observable is invariant under every recoding pair") {
  const Window w{2, 3, 3, 3};
  for (auto mode : {PartitionMode::Product, PartitionMode::Joint}) {
    const auto spec = make_step_observable(w, 77, mode);
    const Observable<PhasePoint> f = [&](const PhasePoint& p) { return step_observable(spec, p); };
    for (const auto& pi : all_permutation_pairs(3, 3)) {
      // joint mode only commutes with equal side permutations
      if (mode == PartitionMode::Joint && !(pi.input == pi.stack)) continue;
      const auto g = alpha_pi(f, pi, w);
      for (const auto& p : corners(w)) REQUIRE(g(p) == f(p));
    }
  }
}
