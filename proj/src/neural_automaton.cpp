#include "symdyn/neural_automaton.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace symdyn {

std::string to_string(Activation a) { return a == Activation::Heaviside ? "heaviside" : "ramp"; }

std::string to_string(Layer layer) {
  switch (layer) {
    case Layer::Mcl: return "MCL";
    case Layer::Bsl: return "BSL";
    case Layer::Ltl: return "LTL";
  }
  return {};
}

std::size_t NetworkSpec::count(Layer layer) const {
  return static_cast<std::size_t>(
      std::count_if(units.begin(), units.end(), [layer](const Unit& u) { return u.layer == layer; }));
}

std::size_t synthesized_unit_count(std::size_t input_cells, std::size_t stack_cells) {
  return 2 + (input_cells + 1) + (stack_cells + 1) + 4 * input_cells * stack_cells;
}

namespace {

enum LtlSlot : std::size_t { kAffine1 = 0, kAffine2 = 1, kGate1 = 2, kGate2 = 3 };

std::string cell_name(std::size_t i, std::size_t j) {
  return "cell(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

NetworkSpec synthesize(const Nda& nda, const SynthesisOptions& options) {
  const std::size_t n_in = nda.input_cells();
  const std::size_t n_st = nda.stack_cells();
  const std::size_t n = synthesized_unit_count(n_in, n_st);
  if (n > options.max_units) {
    throw BuildError("synthesize: network needs " + std::to_string(n) + " units, budget is " +
                     std::to_string(options.max_units));
  }
  const double narrowest = 1.0 / static_cast<double>(std::max(n_in, n_st));
  if (!(options.heaviside_margin > 0) || options.heaviside_margin >= narrowest / 2) {
    throw BuildError("synthesize: comparator margin must be positive and below half the narrowest interval");
  }

  NetworkSpec spec;
  spec.input_cells = n_in;
  spec.stack_cells = n_st;
  spec.heaviside_margin = options.heaviside_margin;
  spec.units.resize(n);
  spec.weights.assign(n * n, 0.0);
  spec.bias.assign(n, 0.0);

  spec.units[NetworkSpec::y1_unit] = {Layer::Mcl, Activation::Ramp, "y1"};
  spec.units[NetworkSpec::y2_unit] = {Layer::Mcl, Activation::Ramp, "y2"};

  // y >= k/N - margin
  auto comparator = [&](std::size_t unit, std::size_t source, std::size_t k, std::size_t cells, const char* axis) {
    spec.units[unit] = {Layer::Bsl, Activation::Heaviside,
                        std::string(axis) + ">=" + std::to_string(k) + "/" + std::to_string(cells)};
    spec.weight(unit, source) = 1.0;
    spec.bias[unit] = -static_cast<double>(k) / static_cast<double>(cells) + options.heaviside_margin;
  };
  for (std::size_t k = 0; k <= n_in; ++k) comparator(spec.input_comparator(k), NetworkSpec::y1_unit, k, n_in, "y1");
  for (std::size_t k = 0; k <= n_st; ++k) comparator(spec.stack_comparator(k), NetworkSpec::y2_unit, k, n_st, "y2");

  const double gain = options.gate_gain;
  for (const NdaCell& c : nda.cells()) {
    const std::string name = cell_name(c.i, c.j);
    const std::size_t aff1 = spec.ltl_unit(c.i, c.j, kAffine1);
    const std::size_t aff2 = spec.ltl_unit(c.i, c.j, kAffine2);
    const std::size_t gate1 = spec.ltl_unit(c.i, c.j, kGate1);
    const std::size_t gate2 = spec.ltl_unit(c.i, c.j, kGate2);

    spec.units[aff1] = {Layer::Ltl, Activation::Ramp, name + " affine y1"};
    spec.weight(aff1, NetworkSpec::y1_unit) = to_double(c.lambda1);
    spec.bias[aff1] = to_double(c.a1);
    spec.units[aff2] = {Layer::Ltl, Activation::Ramp, name + " affine y2"};
    spec.weight(aff2, NetworkSpec::y2_unit) = to_double(c.lambda2);
    spec.bias[aff2] = to_double(c.a2);

    // open gate: affine + gain * (1 + 1) - 2 gain; any closed interval test
    // drops the argument by at least `gain` > 1, below zero
    for (auto [gate, aff, label] : {std::tuple{gate1, aff1, " gate y1"}, std::tuple{gate2, aff2, " gate y2"}}) {
      spec.units[gate] = {Layer::Ltl, Activation::Ramp, name + label};
      spec.weight(gate, aff) = 1.0;
      spec.weight(gate, spec.input_comparator(c.i)) += gain;
      spec.weight(gate, spec.input_comparator(c.i + 1)) -= gain;
      spec.weight(gate, spec.stack_comparator(c.j)) += gain;
      spec.weight(gate, spec.stack_comparator(c.j + 1)) -= gain;
      spec.bias[gate] = -2.0 * gain;
    }
    spec.weight(NetworkSpec::y1_unit, gate1) = 1.0;
    spec.weight(NetworkSpec::y2_unit, gate2) = 1.0;
  }
  validate_synthesized(spec);
  return spec;
}

void validate_synthesized(const NetworkSpec& spec) {
  const std::size_t n = spec.n();
  auto fail = [](const std::string& why) { throw ConsistencyError("network: " + why); };
  if (n != synthesized_unit_count(spec.input_cells, spec.stack_cells)) fail("unit count does not match the layout");
  if (spec.weights.size() != n * n || spec.bias.size() != n) fail("weight or bias dimensions");
  if (spec.count(Layer::Mcl) != 2) fail("MCL must have exactly two units");
  for (std::size_t u = 0; u < n; ++u) {
    const Unit& unit = spec.units[u];
    bool expect_heaviside = unit.layer == Layer::Bsl;
    if ((unit.activation == Activation::Heaviside) != expect_heaviside) fail("unit " + std::to_string(u) + " activation");
  }
  // gated LTL units feed only the MCL; affine LTL units feed only their own gate
  for (std::size_t i = 0; i < spec.input_cells; ++i) {
    for (std::size_t j = 0; j < spec.stack_cells; ++j) {
      for (std::size_t slot = 0; slot < 4; ++slot) {
        const std::size_t from = spec.ltl_unit(i, j, slot);
        for (std::size_t to = 0; to < n; ++to) {
          if (spec.weight(to, from) == 0.0) continue;
          bool ok = slot >= kGate1 ? spec.units[to].layer == Layer::Mcl : to == spec.ltl_unit(i, j, slot + 2);
          if (!ok) fail("LTL unit " + std::to_string(from) + " feeds unit " + std::to_string(to));
        }
      }
    }
  }
}

NeuralState embed(const NetworkSpec& spec, const PhasePoint& p) {
  NeuralState s;
  s.x.assign(spec.n(), 0.0);
  s.x[NetworkSpec::y1_unit] = to_double(p.y1);
  s.x[NetworkSpec::y2_unit] = to_double(p.y2);
  return s;
}

NeuralState na_micro_step(const NetworkSpec& spec, const NeuralState& state) {
  const std::size_t n = spec.n();
  if (state.x.size() != n) throw DomainError("na_micro_step: state dimension does not match the network");
  NeuralState next;
  next.t = state.t + 1;
  next.x.resize(n);
  for (std::size_t to = 0; to < n; ++to) {
    double s = spec.bias[to];
    const double* row = &spec.weights[to * n];
    for (std::size_t from = 0; from < n; ++from) s += row[from] * state.x[from];
    if (!std::isfinite(s)) throw ConsistencyError("na_micro_step: non-finite input to unit " + std::to_string(to));
    next.x[to] = spec.units[to].activation == Activation::Heaviside ? (s >= 0.0 ? 1.0 : 0.0) : std::clamp(s, 0.0, 1.0);
  }
  return next;
}

Trajectory na_run(const NetworkSpec& spec, const NeuralState& x0, int macro_steps) {
  if (macro_steps < 0) throw DomainError("na_run: negative step count");
  if (x0.x.size() != spec.n()) throw DomainError("na_run: state dimension does not match the network");
  Trajectory tr;
  tr.micro_steps_per_macro = spec.micro_steps_per_macro;
  tr.states.reserve(static_cast<std::size_t>(macro_steps) * spec.micro_steps_per_macro + 1);
  tr.states.push_back(x0);
  for (int k = 0; k < macro_steps * spec.micro_steps_per_macro; ++k) {
    tr.states.push_back(na_micro_step(spec, tr.states.back()));
  }
  return tr;
}

MclPoint mcl_projection(const NeuralState& x) {
  if (x.x.size() < 2) throw DomainError("mcl_projection: state has fewer than two units");
  return {x.x[NetworkSpec::y1_unit], x.x[NetworkSpec::y2_unit]};
}

PhasePoint round_to_grid(const MclPoint& p, int m_in, int m_st, int depth) {
  auto snap = [depth](double y, int m) {
    const BigInt scale = numerator(power(m, depth));
    const long double scaled = static_cast<long double>(y) * scale.convert_to<long double>();
    return Rational(BigInt(static_cast<long long>(std::llround(scaled))), scale);
  };
  return {snap(p.y1, m_in), snap(p.y2, m_st)};
}

NdaComparison compare_with_nda(const Trajectory& trajectory, const Nda& nda, const PhasePoint& y0, double tolerance) {
  NdaComparison out;
  const auto orbit = nda_orbit(nda, y0, static_cast<int>(trajectory.macro_steps()));
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const MclPoint m = mcl_projection(trajectory.macro(k));
    double dev = std::max(std::abs(m.y1 - to_double(orbit[k].y1)), std::abs(m.y2 - to_double(orbit[k].y2)));
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  out.within_tolerance = out.max_deviation <= tolerance;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> bsl_selected_cells(const NetworkSpec& spec, const NeuralState& x) {
  std::vector<std::size_t> in_open, st_open;
  for (std::size_t k = 0; k < spec.input_cells; ++k) {
    if (x.x[spec.input_comparator(k)] - x.x[spec.input_comparator(k + 1)] == 1.0) in_open.push_back(k);
  }
  for (std::size_t k = 0; k < spec.stack_cells; ++k) {
    if (x.x[spec.stack_comparator(k)] - x.x[spec.stack_comparator(k + 1)] == 1.0) st_open.push_back(k);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto i : in_open) {
    for (auto j : st_open) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace symdyn
