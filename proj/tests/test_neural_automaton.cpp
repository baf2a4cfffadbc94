#include "support.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/neural_automaton.hpp"

#include <doctest.h>

#include <cmath>

using namespace symdyn;

namespace {

struct Svo {
  Cfg g = test::svo_grammar();
  VersatileShift vs = compile_cfg_topdown(g);
  Encoding enc;
  Nda nda;
  NetworkSpec spec;

  explicit Svo(const std::string& name)
      : enc(test::svo_encoding(g, name)), nda(from_versatile_shift(vs, enc)), spec(synthesize(nda)) {}
};

double to_d(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

TEST_CASE("the sentence machine synthesizes to 72 units") {
  const Svo s("gamma");
  CHECK(s.spec.n() == 72);
  CHECK(synthesized_unit_count(3, 5) == 72);
  CHECK(s.spec.count(Layer::Mcl) == 2);
  CHECK(s.spec.count(Layer::Bsl) == 4 + 6);
  CHECK(s.spec.count(Layer::Ltl) == 60);
  CHECK_NOTHROW(validate_synthesized(s.spec));
  SynthesisOptions tight;
  tight.max_units = 50;
  CHECK_THROWS_AS(synthesize(s.nda, tight), BuildError);
}

TEST_CASE("bias -1 everywhere drives every unit to zero") {
  const Svo s("gamma");
  NetworkSpec spec = s.spec;
  std::fill(spec.weights.begin(), spec.weights.end(), 0.0);
  std::fill(spec.bias.begin(), spec.bias.end(), -1.0);
  NeuralState x = embed(spec, {Rational(1, 2), Rational(1, 3)});
  std::fill(x.x.begin(), x.x.end(), 0.7);
  const auto y = na_micro_step(spec, x);
  for (double v : y.x) CHECK(v == 0.0);
  CHECK(y.t == 1);
}

TEST_CASE("embedding and macro steps follow the exact orbit") {
  for (const char* name : {"gamma", "delta"}) {
    const Svo s(name);
    const auto y0 = encode_tape(initial_tape(s.g, {"NP", "V", "NP"}), s.enc);
    const auto x0 = embed(s.spec, y0);
    CHECK(mcl_projection(x0).y1 == to_d(y0.y1));
    CHECK(mcl_projection(x0).y2 == to_d(y0.y2));
    for (std::size_t k = 2; k < x0.x.size(); ++k) CHECK(x0.x[k] == 0.0);

    const auto traj = na_run(s.spec, x0, 6);
    CHECK(traj.states.size() == 19);
    CHECK(traj.macro_steps() == 6);
    const auto one = mcl_projection(traj.macro(1));
    const auto y1 = encode_tape(parse_dotted("VP NP . NP V NP"), s.enc);
    CHECK(std::abs(one.y1 - to_d(y1.y1)) <= 1e-9);
    CHECK(std::abs(one.y2 - to_d(y1.y2)) <= 1e-9);
    const auto last = mcl_projection(traj.macro(6));
    CHECK(std::abs(last.y1) <= 1e-9);
    CHECK(std::abs(last.y2) <= 1e-9);
    const auto cmp = compare_with_nda(traj, s.nda, y0, 1e-9);
    CHECK(cmp.within_tolerance);
    CHECK(cmp.deviation.size() == 7);
  }
}

TEST_CASE("blank tape stays at the origin") {
  const Svo s("gamma");
  const auto traj = na_run(s.spec, embed(s.spec, {0, 0}), 4);
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(mcl_projection(traj.macro(k)).y1 == 0.0);
    CHECK(mcl_projection(traj.macro(k)).y2 == 0.0);
  }
}

TEST_CASE("zero macro steps returns x0") {
  const Svo s("gamma");
  const auto x0 = embed(s.spec, {Rational(16, 27), Rational(4, 5)});
  const auto traj = na_run(s.spec, x0, 0);
  REQUIRE(traj.states.size() == 1);
  CHECK(traj.states[0] == x0);
}

TEST_CASE("a one-symbol machine with identity cells keeps any point fixed") {
  // every window halts, so each cell is the identity
  const auto ab = Alphabet::with_blank({"a"});
  VsRule never{{{Slot::sym("a")}, {Slot::sym("_")}}, {{Slot::sym("a")}, {Slot::sym("_")}}, 0, "noop"};
  const VersatileShift vs(ab, ab, Dod{1, 1}, {never});
  const Encoding enc{"id", Ordering::identity(ab), Ordering::identity(ab)};
  const auto nda = from_versatile_shift(vs, enc);
  const auto spec = synthesize(nda);
  for (const auto& p : {PhasePoint{Rational(1, 4), Rational(3, 4)}, PhasePoint{Rational(5, 8), Rational(1, 8)}}) {
    const auto traj = na_run(spec, embed(spec, p), 5);
    CHECK(compare_with_nda(traj, nda, p, 1e-12).within_tolerance);
    CHECK(std::abs(mcl_projection(traj.macro(5)).y1 - to_d(p.y1)) <= 1e-12);
  }
}

TEST_CASE("nested grammar network tracks twenty steps") {
  const auto g = parse_grammar("S -> a T\nT -> S b\nT -> b\n");
  const auto vs = compile_cfg_topdown(g);
  const Encoding enc{"id", Ordering::identity(input_alphabet_of(g)), Ordering::identity(stack_alphabet_of(g))};
  const auto nda = from_versatile_shift(vs, enc);
  const auto spec = synthesize(nda);
  const auto y0 = encode_tape(initial_tape(g, {"a", "a", "a", "a", "b", "b", "b", "b"}), enc);
  const auto traj = na_run(spec, embed(spec, y0), 20);
  const auto cmp = compare_with_nda(traj, nda, y0, 1e-9);
  CHECK(cmp.within_tolerance);
  CHECK(cmp.max_deviation <= 1e-9);
}

TEST_CASE("BSL selects the decoded cell, states stay bounded, runs are deterministic") {
  const Svo s("delta");
  const auto vs_trace = vs_run(s.vs, initial_tape(s.g, {"NP", "V", "NP"}), 10);
  const auto y0 = encode_tape(vs_trace.rows.front().state, s.enc);
  const auto traj = na_run(s.spec, embed(s.spec, y0), 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto sel = bsl_selected_cells(s.spec, traj.states[k * 3 + 1]);
    REQUIRE(sel.size() == 1);
    const auto& row = vs_trace.rows[std::min(k, vs_trace.rows.size() - 1)];
    const auto loc = s.nda.decode_point(encode_tape(row.state, s.enc));
    CHECK(sel[0] == std::pair{loc.i, loc.j});
  }
  for (const auto& st : traj.states)
    for (double v : st.x) REQUIRE((v >= 0.0 && v <= 1.0));
  const auto again = na_run(s.spec, embed(s.spec, y0), 6);
  CHECK(again.states == traj.states);
}

TEST_CASE("round_to_grid") {
  const auto p = round_to_grid({0.5925925925925926, 0.8000000000000002}, 3, 5, 6);
  CHECK(p == PhasePoint{Rational(16, 27), Rational(4, 5)});
}
