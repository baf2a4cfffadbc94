#pragma once

// Recurrent network realizing an NDA.
//
// Layers:
//   MCL  2 ramp units holding (y1, y2).
//   BSL  Heaviside comparators, one per interval endpoint k/N of each axis
//        (N + 1 per axis).  On each axis the comparator pattern is a
//        thermometer code, so  b_k - b_{k+1}  is the indicator of interval k.
//   LTL  4 ramp units per cell: two compute λ_d y_d + a_d straight from the
//        MCL, two pass that value on only when the BSL code selects the cell.
//
// One macro step is three synchronous micro steps:
//   t+1  BSL and the affine LTL units read the MCL,
//   t+2  the gated LTL units read the affine units and the BSL,
//   t+3  the MCL sums the gated units.
// All other units carry pipeline leftovers between macro boundaries; only
// the MCL is meaningful at t = 3k.

#include "symdyn/nda.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace symdyn {

enum class Activation { Heaviside, Ramp };
enum class Layer { Mcl, Bsl, Ltl };

std::string to_string(Activation a);
std::string to_string(Layer layer);

struct Unit {
  Layer layer = Layer::Ltl;
  Activation activation = Activation::Ramp;
  std::string role;
};

struct NetworkSpec {
  std::vector<Unit> units;
  std::vector<double> weights;  // row-major n x n, weights[to * n + from]
  std::vector<double> bias;
  int micro_steps_per_macro = 3;

  // Layout of a synthesized network; zero for hand-built specs.
  std::size_t input_cells = 0;
  std::size_t stack_cells = 0;
  double heaviside_margin = 0;

  std::size_t n() const { return units.size(); }
  double weight(std::size_t to, std::size_t from) const { return weights[to * n() + from]; }
  double& weight(std::size_t to, std::size_t from) { return weights[to * n() + from]; }
  std::size_t count(Layer layer) const;

  // Unit indices in a synthesized network.
  static constexpr std::size_t y1_unit = 0;
  static constexpr std::size_t y2_unit = 1;
  std::size_t input_comparator(std::size_t k) const { return 2 + k; }
  std::size_t stack_comparator(std::size_t k) const { return 2 + input_cells + 1 + k; }
  std::size_t ltl_unit(std::size_t i, std::size_t j, std::size_t slot) const {
    return 2 + input_cells + 1 + stack_cells + 1 + 4 * (i * stack_cells + j) + slot;
  }
};

struct SynthesisOptions {
  std::size_t max_units = 100000;
  double heaviside_margin = 1e-12;
  double gate_gain = 2.0;
};

/// Unit count a synthesized network will have for an NDA with the given
/// axis cell counts: 2 + (N_in + 1) + (N_st + 1) + 4 N_in N_st.
std::size_t synthesized_unit_count(std::size_t input_cells, std::size_t stack_cells);

/// Throws BuildError if the unit count exceeds `max_units` or the
/// comparator margin is not below half the narrowest interval.
NetworkSpec synthesize(const Nda& nda, const SynthesisOptions& options = {});

/// Checks the layer wiring of a synthesized spec; throws ConsistencyError.
void validate_synthesized(const NetworkSpec& spec);

struct NeuralState {
  std::vector<double> x;
  long t = 0;

  bool operator==(const NeuralState&) const = default;
};

/// MCL set to p, every other unit 0.
NeuralState embed(const NetworkSpec& spec, const PhasePoint& p);

/// x' = F(W x + b); Heaviside is 1 iff its argument is >= 0, ramp clamps to
/// [0, 1].  Throws ConsistencyError on non-finite values.
NeuralState na_micro_step(const NetworkSpec& spec, const NeuralState& x);

struct Trajectory {
  std::vector<NeuralState> states;  // every micro state, states[0] = x0
  int micro_steps_per_macro = 3;

  std::size_t macro_steps() const { return (states.size() - 1) / micro_steps_per_macro; }
  const NeuralState& macro(std::size_t k) const { return states.at(k * micro_steps_per_macro); }
};

Trajectory na_run(const NetworkSpec& spec, const NeuralState& x0, int macro_steps);

struct MclPoint {
  double y1 = 0;
  double y2 = 0;
};

MclPoint mcl_projection(const NeuralState& x);

/// Nearest point of the grid (m_in^-depth Z) x (m_st^-depth Z).
PhasePoint round_to_grid(const MclPoint& p, int m_in, int m_st, int depth);

struct NdaComparison {
  std::vector<double> deviation;  // per macro boundary, max over coordinates
  double max_deviation = 0;
  bool within_tolerance = true;
};

/// Compares MCL values at macro boundaries with the exact NDA orbit from y0.
NdaComparison compare_with_nda(const Trajectory& trajectory, const Nda& nda, const PhasePoint& y0, double tolerance);

/// Cells whose gate the BSL code opens in state x (read the BSL at the
/// micro step right after a macro boundary).
std::vector<std::pair<std::size_t, std::size_t>> bsl_selected_cells(const NetworkSpec& spec, const NeuralState& x);

}  // namespace symdyn
