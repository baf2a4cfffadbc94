#include "support.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/nda.hpp"

#include <doctest.h>

using namespace symdyn;

namespace {

const char* kAnBn = "S -> a T\nT -> S b\nT -> b\n";

Encoding identity_encoding(const Cfg& g) {
  return {"id", Ordering::identity(input_alphabet_of(g)), Ordering::identity(stack_alphabet_of(g))};
}

}  // namespace

TEST_CASE("encode_tape") {
  const auto g = test::svo_grammar();
  const auto gamma = test::svo_encoding(g, "gamma");
  CHECK(encode_tape(DottedSequence{}, gamma) == PhasePoint{0, 0});
  CHECK(encode_tape(parse_dotted("S . NP V NP"), gamma) == PhasePoint{Rational(16, 27), Rational(4, 5)});
  // 2/3 + 1/9 for "V NP"; the stack holds VP alone
  CHECK(encode_tape(parse_dotted("VP . V NP"), gamma) == PhasePoint{Rational(7, 9), Rational(3, 5)});
  CHECK_THROWS_AS(encode_tape(parse_dotted("S . X"), gamma), DomainError);
}

TEST_CASE("decode_point") {
  const auto g = test::svo_grammar();
  const auto gamma = test::svo_encoding(g, "gamma");
  const auto nda = from_versatile_shift(compile_cfg_topdown(g), gamma);
  CHECK(nda.input_cells() == 3);
  CHECK(nda.stack_cells() == 5);
  auto loc = nda.decode_point({0, 0});
  CHECK(loc.input_digits == Digits{0});
  CHECK(loc.stack_digits == Digits{0});
  loc = nda.decode_point({Rational(16, 27), Rational(4, 5)});
  CHECK(loc.i == 1);
  CHECK(loc.j == 4);
  // the left endpoint belongs to the cell
  loc = nda.decode_point({Rational(1, 3), Rational(2, 5)});
  CHECK(loc.i == 1);
  CHECK(loc.j == 2);
  CHECK_THROWS_AS(nda.decode_point({1, 0}), DomainError);
  CHECK_THROWS_AS(nda.decode_point({0, Rational(-1, 5)}), DomainError);
}

TEST_CASE("cell coefficients") {
  const auto g = test::svo_grammar();
  const auto gamma = test::svo_encoding(g, "gamma");
  const auto nda = from_versatile_shift(compile_cfg_topdown(g), gamma);

  // attach NP: pop one digit from both sides
  const auto& attach = nda.cell(1, 1);
  CHECK(attach.label == "attach");
  CHECK(attach.lambda1 == 3);
  CHECK(attach.lambda2 == 5);
  CHECK(attach.a1 == -1);
  CHECK(attach.a2 == -1);
  const auto& attach_v = nda.cell(2, 2);
  CHECK(attach_v.a1 == -2);
  CHECK(attach_v.a2 == -2);

  // predict S -> NP VP on input NP: S is replaced by NP on top of VP
  const auto& predict = nda.cell(1, 4);
  CHECK(predict.label == "predict (S -> NP VP)");
  CHECK(predict.lambda1 == 1);
  CHECK(predict.a1 == 0);
  CHECK(predict.lambda2 == Rational(1, 5));
  CHECK(predict.a2 == Rational(1, 5) + Rational(3, 25) - Rational(4, 25));

  // halting cells are the identity
  for (const auto& c : nda.cells()) {
    if (c.rule) continue;
    CHECK(c.label == kHaltLabel);
    CHECK(c.lambda1 == 1);
    CHECK(c.lambda2 == 1);
    CHECK(c.a1 == 0);
    CHECK(c.a2 == 0);
  }
  CHECK(nda.step({0, 0}) == PhasePoint{0, 0});
  for (const auto& c : nda.cells()) {
    CHECK(is_power_of(c.lambda1, 3));
    CHECK(is_power_of(c.lambda2, 5));
  }
}

TEST_CASE("commutation on the sentence under both encodings") {
  const auto g = test::svo_grammar();
  const auto vs = compile_cfg_topdown(g);
  for (const char* name : {"gamma", "delta"}) {
    const auto enc = test::svo_encoding(g, name);
    const auto nda = from_versatile_shift(vs, enc);
    const auto trace = vs_run(vs, initial_tape(g, {"NP", "V", "NP"}), 10);
    const auto orbit = nda_orbit(nda, encode_tape(trace.rows.front().state, enc), 5);
    REQUIRE(orbit.size() == trace.rows.size());
    for (std::size_t t = 0; t < orbit.size(); ++t) CHECK(orbit[t] == encode_tape(trace.rows[t].state, enc));
  }
}

TEST_CASE("twenty-step commutation on a nested grammar") {
  const auto g = parse_grammar(kAnBn);
  const auto vs = compile_cfg_topdown(g);
  const auto enc = identity_encoding(g);
  const auto nda = from_versatile_shift(vs, enc);
  Word w;
  for (int k = 0; k < 7; ++k) w.insert(w.begin(), "a"), w.push_back("b");
  auto s = initial_tape(g, w);
  PhasePoint p = encode_tape(s, enc);
  for (int t = 0; t < 25; ++t) {
    const auto next = vs_step(vs, s).next;
    p = nda_step(nda, p);
    REQUIRE(p == encode_tape(next, enc));
    s = next;
  }
  CHECK(vs_run(vs, initial_tape(g, w), 100).outcome == RunOutcome::Accept);
}

TEST_CASE("cells cover the square without overlap") {
  const auto g = test::svo_grammar();
  const auto nda = from_versatile_shift(compile_cfg_topdown(g), test::svo_encoding(g, "delta"));
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b) {
      const PhasePoint p{Rational(a, 64), Rational(b, 64)};
      int hits = 0;
      for (const auto& c : nda.cells()) hits += c.input_interval.contains(p.y1) && c.stack_interval.contains(p.y2);
      REQUIRE(hits == 1);
      const auto loc = nda.decode_point(p);
      const auto& c = nda.cell(loc.i, loc.j);
      REQUIRE((c.input_interval.contains(p.y1) && c.stack_interval.contains(p.y2)));
    }
}

TEST_CASE("Nda constructor validation") {
  const auto g = test::svo_grammar();
  const auto enc = test::svo_encoding(g, "gamma");
  const auto nda = from_versatile_shift(compile_cfg_topdown(g), enc);
  auto cells = nda.cells();
  cells.pop_back();
  CHECK_THROWS_AS(Nda(Dod{1, 1}, enc, cells), BuildError);
  cells = nda.cells();
  cells[3].lambda1 = 2;
  CHECK_THROWS_AS(Nda(Dod{1, 1}, enc, cells), BuildError);
  cells = nda.cells();
  cells[7].a1 = 5;
  CHECK_THROWS_AS(Nda(Dod{1, 1}, enc, cells), BuildError);
  CHECK_NOTHROW(Nda(Dod{1, 1}, enc, nda.cells()));
}

TEST_CASE("is_power_of") {
  CHECK(is_power_of(Rational(1), 3));
  CHECK(is_power_of(Rational(9), 3));
  CHECK(is_power_of(Rational(1, 27), 3));
  CHECK_FALSE(is_power_of(Rational(6), 3));
  CHECK_FALSE(is_power_of(Rational(-3), 3));
  CHECK_FALSE(is_power_of(Rational(0), 3));
}
