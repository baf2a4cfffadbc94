// Acceptance criteria, one PASS/FAIL line each.  Exit status is the number
// of failed criteria (capped at 1).

#include "support.hpp"

#include "symdyn/checks.hpp"
#include "symdyn/equality_patterns.hpp"
#include "symdyn/experiment.hpp"
#include "symdyn/export.hpp"
#include "symdyn/neural_automaton.hpp"
#include "symdyn/observables.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace symdyn;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    o.passed = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(budget_seconds)) + " s budget)";
  }
  if (!o.passed) ++failures;
  std::printf("%s %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

Digits letters(const std::string& s) {
  Digits d;
  for (char c : s) d.push_back(c - 'a');
  return d;
}

Outcome sentence_trace() {
  const auto g = load_grammar(test::config_path("svo.grammar"));
  const auto trace = vs_run(compile_cfg_topdown(g), initial_tape(g, {"NP", "V", "NP"}), 1000);
  std::ostringstream out;
  write_trace_csv(out, trace);
  const std::string expected =
      "time,stack,input,operation\n"
      "0,S,NP V NP,predict (S -> NP VP)\n"
      "1,VP NP,NP V NP,attach\n"
      "2,VP,V NP,predict (VP -> V NP)\n"
      "3,NP V,V NP,attach\n"
      "4,NP,NP,attach\n"
      "5,ε,ε,accept\n";
  return {out.str() == expected && trace.outcome == RunOutcome::Accept, "6 rows, ends in accept"};
}

Outcome orbit_oracle() {
  std::size_t pairs = 0, mismatches = 0;
  for (int m = 2; m <= 3; ++m) {
    const auto perms = all_permutations(m, false);
    for (int l = 0; l <= 5; ++l) {
      const std::size_t n = checked_power(m, l, 1u << 20);
      for (std::size_t a = 0; a < n; ++a) {
        const Digits w = index_to_digits(a, m, l);
        for (std::size_t b = 0; b < n; ++b) {
          const Digits u = index_to_digits(b, m, l);
          const bool brute = std::any_of(perms.begin(), perms.end(), [&](const Permutation& p) { return recode(w, p) == u; });
          ++pairs;
          mismatches += same_orbit(w, u, m, false) != brute;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome orbit_example() {
  std::set<Digits> expected;
  for (const char* s : {"bbbacbac", "cccbacba", "aaacbacb", "bbbcabca", "cccabcab", "aaabcabc"}) expected.insert(letters(s));
  const auto got = orbit(letters("aaabcabc"), 3, false);
  return {std::set<Digits>(got.begin(), got.end()) == expected && got.size() == 6,
          std::to_string(got.size()) + " of 6561 words"};
}

Outcome six_rectangles() {
  const auto map = square_partition(3, 2, 3, PartitionMode::Joint, false);
  const auto seed = map.cell_index(6, 10);
  std::set<std::pair<Rational, Rational>> got;
  for (auto c : map.members(map.class_of[seed])) got.insert({map.left_corner(c), map.right_corner(c)});
  const std::set<std::pair<Rational, Rational>> expected{
      {Rational(1, 9), Rational(23, 27)}, {Rational(3, 9), Rational(20, 27)}, {Rational(2, 9), Rational(16, 27)},
      {Rational(6, 9), Rational(10, 27)}, {Rational(7, 9), Rational(3, 27)},  {Rational(5, 9), Rational(6, 27)}};
  return {got == expected, std::to_string(got.size()) + " rectangles in the seed class"};
}

struct Svo {
  ExperimentConfig config = load_config(test::config_path("svo.ini"));
  ExperimentSetup setup = prepare(config);
  CheckContext context = check_context(setup, config);
};

Outcome suites(const std::vector<std::string>& names) {
  Svo svo;
  CheckSettings s = svo.config.check;
  s.corrupt_cell.reset();
  s.suites = names;
  Outcome o{true, ""};
  for (const auto& r : run_checks(svo.context, s)) {
    o.passed = o.passed && r.passed;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += r.suite + " " + (r.passed ? "" : "FAILED ") + r.detail;
  }
  return o;
}

Outcome cylinder_metric() {
  Svo svo;
  CheckSettings s;
  s.suites = {"cylinder-metric"};
  s.cylinder_m = 3;
  s.cylinder_max_length = 4;
  s.cylinder_extensions = 10000;
  const auto r = run_check("cylinder-metric", svo.context, s);
  return {r.passed, r.detail};
}

Outcome commutation() {
  const auto g = test::svo_grammar();
  const auto vs = compile_cfg_topdown(g);
  std::size_t checked = 0;
  for (const char* name : {"gamma", "delta"}) {
    const auto enc = test::svo_encoding(g, name);
    const auto nda = from_versatile_shift(vs, enc);
    auto s = initial_tape(g, {"NP", "V", "NP"});
    for (int t = 0; t < 6; ++t) {
      const auto next = vs_step(vs, s).next;
      if (nda_step(nda, encode_tape(s, enc)) != encode_tape(next, enc))
        return {false, std::string(name) + " step " + std::to_string(t)};
      s = next;
      ++checked;
    }
  }
  Svo svo;
  CheckSettings st;
  st.random_machines = 10;
  st.random_tapes = 100;
  const auto r = run_check("commutation", svo.context, st);
  return {r.passed, std::to_string(checked) + " sentence steps; suite " + r.detail};
}

Outcome na_soundness() {
  const auto g = test::svo_grammar();
  const auto vs = compile_cfg_topdown(g);
  double worst = 0;
  std::size_t n = 0;
  for (const char* name : {"gamma", "delta"}) {
    const auto enc = test::svo_encoding(g, name);
    const auto nda = from_versatile_shift(vs, enc);
    const auto spec = synthesize(nda);
    n = spec.n();
    const auto y0 = encode_tape(initial_tape(g, {"NP", "V", "NP"}), enc);
    const auto cmp = compare_with_nda(na_run(spec, embed(spec, y0), 6), nda, y0, 1e-9);
    worst = std::max(worst, cmp.max_deviation);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "n = %zu, max deviation %.3g", n, worst);
  return {n == 72 && worst <= 1e-9, buf};
}

Outcome step_invariance() {
  const auto report = run_experiment(load_config(test::config_path("svo.ini")));
  std::map<std::string, std::map<int, double>> step;
  for (const auto& r : report.series)
    if (r.observable == kStepObservable) step[r.encoding][r.step] = r.value;
  bool same = step.size() == 2;
  for (int i = 1; i <= 6 && same; ++i) same = step["gamma"].count(i) && step["gamma"][i] == step["delta"][i];
  if (!same) return {false, "step series differ between gamma and delta"};

  const Window w{2, 3, 3, 3};
  const auto spec = make_step_observable(w, 2024);
  std::size_t cases = 0;
  for (const auto& pi : all_permutation_pairs(3, 3))
    for (std::size_t c = 0; c < spec.classes.cell_count(); ++c) {
      const PhasePoint p{spec.classes.right_corner(c), spec.classes.left_corner(c)};
      ++cases;
      if (step_observable(spec, rho_pi(p, pi, w)) != step_observable(spec, p)) return {false, "rho breaks invariance"};
    }
  return {true, "steps 1..6 equal; " + std::to_string(cases) + " rectangle/permutation cases invariant"};
}

Outcome amari_difference() {
  const auto report = run_experiment(load_config(test::config_path("svo.ini")));
  std::map<std::string, std::map<int, double>> a;
  for (const auto& r : report.series)
    if (r.observable == "amari") a[r.encoding][r.step] = r.value;
  double worst = 0;
  for (const auto& [t, v] : a["gamma"])
    if (a["delta"].count(t)) worst = std::max(worst, std::abs(v - a["delta"][t]));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |amari difference| %.3g", worst);
  return {worst > 1e-6, buf};
}

}  // namespace

int main() {
  criterion("sentence-trace", 1, sentence_trace);
  criterion("orbit-oracle", 60, orbit_oracle);
  criterion("orbit-example", 10, orbit_example);
  criterion("six-rectangle-class", 10, six_rectangles);
  criterion("cylinder-metric", 60, cylinder_metric);
  criterion("commutation-square", 60, commutation);
  criterion("na-soundness", 60, na_soundness);
  criterion("step-observable-invariance", 60, step_invariance);
  criterion("amari-non-invariance", 60, amari_difference);
  criterion("property-suites", 300, [] { return suites({"all"}); });
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
