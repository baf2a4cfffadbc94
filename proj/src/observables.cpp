#include "symdyn/observables.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace symdyn {

namespace {

constexpr double kGridSnap = 1e-9;

std::size_t axis_index(const Rational& y, int m, int digits) {
  if (y < 0 || y >= 1) throw DomainError("observable: coordinate " + to_string(y) + " outside [0, 1)");
  return static_cast<std::size_t>(floor_to_int(y * power(m, digits)));
}

std::size_t axis_index(double y, std::size_t cells) {
  double scaled = std::floor(y * static_cast<double>(cells) + kGridSnap);
  return static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(cells - 1)));
}

// Index of the rectangle obtained by recoding the corner digits on one axis.
std::size_t recoded_index(std::size_t index, const Permutation& pi, int m, int digits) {
  return digits_to_index(recode(index_to_digits(index, m, digits), pi), m);
}

}  // namespace

StepObservableSpec make_step_observable(const Window& window, std::uint64_t seed, PartitionMode mode) {
  StepObservableSpec spec;
  spec.window = window;
  spec.seed = seed;
  spec.classes = square_partition(window.m_st, window.l, window.m_in, window.r, mode, true);

  const std::size_t s = static_cast<std::size_t>(spec.classes.class_count);
  const std::size_t grid = std::max<std::size_t>(1000, 10 * s);
  std::vector<std::size_t> points(grid);
  std::iota(points.begin(), points.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates; written out so the draw does not depend on the
  // standard library's distribution implementations
  for (std::size_t k = 0; k < s; ++k) {
    std::size_t pick = k + static_cast<std::size_t>(rng() % (grid - k));
    std::swap(points[k], points[pick]);
    spec.coefficients.push_back(static_cast<double>(points[k]) / static_cast<double>(grid));
  }
  return spec;
}

std::size_t rectangle_of(const StepObservableSpec& spec, const PhasePoint& p) {
  const Window& w = spec.window;
  return spec.classes.cell_index(axis_index(p.y2, w.m_st, w.l), axis_index(p.y1, w.m_in, w.r));
}

std::size_t rectangle_of(const StepObservableSpec& spec, const MclPoint& p) {
  return spec.classes.cell_index(axis_index(p.y2, spec.classes.left_cells),
                                 axis_index(p.y1, spec.classes.right_cells));
}

double step_observable(const StepObservableSpec& spec, const PhasePoint& p) {
  return spec.coefficients[spec.classes.class_of[rectangle_of(spec, p)]];
}

double step_observable(const StepObservableSpec& spec, const NeuralState& x) {
  return spec.coefficients[spec.classes.class_of[rectangle_of(spec, mcl_projection(x))]];
}

PermutationPair::PermutationPair(Permutation in, Permutation st) : input(std::move(in)), stack(std::move(st)) {
  if (!input.fixes_zero() || !stack.fixes_zero()) throw DomainError("permutation pair must fix the blank digit 0");
}

PermutationPair compose(const PermutationPair& outer, const PermutationPair& inner) {
  return {compose(outer.input, inner.input), compose(outer.stack, inner.stack)};
}

PermutationPair inverse(const PermutationPair& pi) { return {pi.input.inverse(), pi.stack.inverse()}; }

std::vector<PermutationPair> all_permutation_pairs(int m_in, int m_st) {
  std::vector<PermutationPair> out;
  for (const auto& a : all_permutations(m_in, true)) {
    for (const auto& b : all_permutations(m_st, true)) out.emplace_back(a, b);
  }
  return out;
}

namespace {

void check_degrees(const PermutationPair& pi, const Window& w) {
  if (pi.input.size() != w.m_in || pi.stack.size() != w.m_st) {
    throw DomainError("rho_pi: permutation degrees do not match the window's alphabet sizes");
  }
}

}  // namespace

PhasePoint rho_pi(const PhasePoint& p, const PermutationPair& pi, const Window& w) {
  check_degrees(pi, w);
  const std::size_t i = axis_index(p.y1, w.m_in, w.r);
  const std::size_t j = axis_index(p.y2, w.m_st, w.l);
  const std::size_t i2 = recoded_index(i, pi.input, w.m_in, w.r);
  const std::size_t j2 = recoded_index(j, pi.stack, w.m_st, w.l);
  return {p.y1 + (Rational(static_cast<long long>(i2)) - static_cast<long long>(i)) * power(w.m_in, -w.r),
          p.y2 + (Rational(static_cast<long long>(j2)) - static_cast<long long>(j)) * power(w.m_st, -w.l)};
}

NeuralState rho_pi(const NeuralState& x, const PermutationPair& pi, const Window& w) {
  check_degrees(pi, w);
  const MclPoint p = mcl_projection(x);
  const std::size_t n_in = checked_power(w.m_in, w.r, kDefaultMaxCells);
  const std::size_t n_st = checked_power(w.m_st, w.l, kDefaultMaxCells);
  const std::size_t i = axis_index(p.y1, n_in);
  const std::size_t j = axis_index(p.y2, n_st);
  const std::size_t i2 = recoded_index(i, pi.input, w.m_in, w.r);
  const std::size_t j2 = recoded_index(j, pi.stack, w.m_st, w.l);
  NeuralState out = x;
  out.x[NetworkSpec::y1_unit] += (static_cast<double>(i2) - static_cast<double>(i)) / static_cast<double>(n_in);
  out.x[NetworkSpec::y2_unit] += (static_cast<double>(j2) - static_cast<double>(j)) / static_cast<double>(n_st);
  return out;
}

double amari(const NeuralState& x) {
  if (x.x.empty()) throw DomainError("amari: empty state");
  return std::accumulate(x.x.begin(), x.x.end(), 0.0) / static_cast<double>(x.x.size());
}

double harmony(const NeuralState& x, std::span<const double> weights) {
  const std::size_t n = x.x.size();
  if (weights.size() != n * n) throw DomainError("harmony: weight matrix does not match the state dimension");
  double h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.x[i] == 0.0) continue;
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += weights[i * n + j] * x.x[j];
    h += x.x[i] * row;
  }
  return h;
}

double dissimilarity(const NeuralState& x_t, const NeuralState& x_prev) {
  if (x_t.x.size() != x_prev.x.size()) throw DomainError("dissimilarity: dimension mismatch");
  double dot = 0, nt = 0, np = 0;
  for (std::size_t i = 0; i < x_t.x.size(); ++i) {
    dot += x_t.x[i] * x_prev.x[i];
    nt += x_t.x[i] * x_t.x[i];
    np += x_prev.x[i] * x_prev.x[i];
  }
  if (nt == 0.0 || np == 0.0) throw DomainError("dissimilarity: undefined for a zero state");
  return 1.0 - dot / (std::sqrt(nt) * std::sqrt(np));
}

}  // namespace symdyn
