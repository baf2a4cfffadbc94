#pragma once

// Macroscopic observables on network states and the recoding symmetry.
//
// The step observable cuts the MCL square into rectangles given by l stack
// digits and r input digits, groups rectangles by the equality pattern of
// their corner words (blank pinned), and assigns one distinct coefficient
// per group.  A recoding pair π = (π_in, π_st) fixing the blank acts on the
// square by moving each rectangle rigidly onto the rectangle of its
// recoded corner (ρ_π) and on observables by pull-back (α_π f = f ∘ ρ_π).

#include "symdyn/equality_patterns.hpp"
#include "symdyn/nda.hpp"
#include "symdyn/neural_automaton.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace symdyn {

/// Observation window: l digits of the stack coordinate y2 (base m_st) and
/// r digits of the input coordinate y1 (base m_in).
struct Window {
  int l = 1;
  int r = 1;
  int m_st = 2;
  int m_in = 2;
};

struct StepObservableSpec {
  Window window;
  // square_partition(m_st, l, m_in, r, mode, blank_pinned = true): the left
  // side is the stack word, the right side the input word
  PatternClassMap classes;
  std::vector<double> coefficients;  // one per class, pairwise distinct
  std::uint64_t seed = 0;
};

/// Coefficients are distinct points k/G of a grid with G >= 1000, drawn
/// without replacement by a seeded mt19937_64.
StepObservableSpec make_step_observable(const Window& window, std::uint64_t seed,
                                        PartitionMode mode = PartitionMode::Product);

/// Index into spec.classes of the rectangle holding p.
std::size_t rectangle_of(const StepObservableSpec& spec, const PhasePoint& p);
/// Float version; coordinates within 1e-9 below a grid line count as on it.
std::size_t rectangle_of(const StepObservableSpec& spec, const MclPoint& p);

double step_observable(const StepObservableSpec& spec, const PhasePoint& p);
/// Depends on x only through its MCL projection.
double step_observable(const StepObservableSpec& spec, const NeuralState& x);

struct PermutationPair {
  Permutation input;  // acts on input digits, degree m_in
  Permutation stack;  // acts on stack digits, degree m_st

  /// Throws DomainError unless both fix 0.
  PermutationPair(Permutation input, Permutation stack);
  bool operator==(const PermutationPair&) const = default;
};

/// Componentwise composition (outer ∘ inner).
PermutationPair compose(const PermutationPair& outer, const PermutationPair& inner);
PermutationPair inverse(const PermutationPair& pi);
/// S_{m_in - 1} x S_{m_st - 1}, as permutations fixing 0.
std::vector<PermutationPair> all_permutation_pairs(int m_in, int m_st);

PhasePoint rho_pi(const PhasePoint& p, const PermutationPair& pi, const Window& window);
/// Moves the MCL pair; every other unit is left as is.
NeuralState rho_pi(const NeuralState& x, const PermutationPair& pi, const Window& window);

template <class State>
using Observable = std::function<double(const State&)>;

/// α_π(f)(x) = f(ρ_π(x)).  With ρ_{π∘σ} = ρ_π ∘ ρ_σ this gives
/// α_{π∘σ} = α_σ ∘ α_π.
template <class State>
Observable<State> alpha_pi(Observable<State> f, const PermutationPair& pi, const Window& window) {
  return [f = std::move(f), pi, window](const State& x) { return f(rho_pi(x, pi, window)); };
}

/// Mean activation (1/n) Σ x_i.
double amari(const NeuralState& x);

/// xᵀ W x for a row-major n x n matrix.
double harmony(const NeuralState& x, std::span<const double> weights);
inline double harmony(const NeuralState& x, const NetworkSpec& spec) { return harmony(x, spec.weights); }

/// 1 - cos(x_t, x_prev); throws DomainError if either vector is zero.
double dissimilarity(const NeuralState& x_t, const NeuralState& x_prev);

}  // namespace symdyn
