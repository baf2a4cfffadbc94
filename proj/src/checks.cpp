#include "symdyn/checks.hpp"

#include "symdyn/equality_patterns.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/neural_automaton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace symdyn {

namespace {

using Rng = std::mt19937_64;

// Collects cases and keeps the smallest counterexample seen.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t best_size = SIZE_MAX;
  std::string counterexample;

  void ok() { ++cases; }
  void fail(std::size_t size, const std::string& what) {
    ++cases;
    ++failures;
    if (size < best_size) {
      best_size = size;
      counterexample = what;
    }
  }
  void check(bool good, std::size_t size, const std::function<std::string()>& what) {
    if (good) {
      ok();
    } else {
      fail(size, what());
    }
  }
};

int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// All permutations of {0..m-1} (fixing 0 when asked), enumerated here with
// std::next_permutation so the oracles do not share code with the library.
std::vector<std::vector<int>> brute_permutations(int m, bool fix_zero) {
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    if (!fix_zero || p[0] == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Digits apply_perm(const Digits& w, const std::vector<int>& p) {
  Digits out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = p[static_cast<std::size_t>(w[k])];
  return out;
}

// Lexicographically least word in the orbit; equal keys <=> same orbit.
Digits orbit_key(const Digits& w, const std::vector<std::vector<int>>& perms) {
  Digits best = apply_perm(w, perms.front());
  for (const auto& p : perms) best = std::min(best, apply_perm(w, p));
  return best;
}

std::vector<Digits> all_words(int m, int length) {
  std::size_t count = checked_power(m, length, kDefaultMaxCells);
  std::vector<Digits> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(index_to_digits(k, m, length));
  return out;
}

std::string digits_text(const Digits& d) { return d.empty() ? std::string("ε") : format_digits(d); }

// ---------------------------------------------------------------------------

Tally check_ultrametric(const CheckSettings& s) {
  Tally t;
  Rng rng(s.seed);
  const Alphabet alph = Alphabet::with_blank({"a", "b"});
  const int m = alph.size();
  auto random_seq = [&] {
    OneSidedSequence q{alph, {}, {}};
    int len = rand_int(rng, 0, 5);
    for (int k = 0; k < len; ++k) q.prefix.push_back(alph.symbols()[static_cast<std::size_t>(rand_int(rng, 0, m - 1))]);
    if (rand_int(rng, 0, 3) == 0) {
      int period = rand_int(rng, 1, 3);
      for (int k = 0; k < period; ++k) q.tail.push_back(alph.symbols()[static_cast<std::size_t>(rand_int(rng, 0, m - 1))]);
    }
    return q;
  };
  // independent distance: first disagreement within a horizon that covers
  // prefix lengths and periods used above
  auto oracle = [&](const OneSidedSequence& p, const OneSidedSequence& q) -> Rational {
    for (std::size_t k = 0; k < 64; ++k) {
      if (p.at(k) != q.at(k)) return power(m, -static_cast<int>(k));
    }
    return 0;
  };
  auto text = [](const OneSidedSequence& q) {
    return format_word(q.prefix) + (q.tail.empty() ? "" : " (" + format_word(q.tail) + ")*");
  };
  for (int n = 0; n < s.ultrametric_samples; ++n) {
    OneSidedSequence p = random_seq(), q = random_seq(), r = random_seq();
    if (n % 4 == 0) q = p;
    const std::size_t size = p.prefix.size() + q.prefix.size() + r.prefix.size();
    const Rational dpq = ultrametric(p, q), dqp = ultrametric(q, p);
    t.check(dpq == oracle(p, q), size, [&] { return "d(" + text(p) + ", " + text(q) + ") = " + to_string(dpq); });
    t.check(dpq == dqp, size, [&] { return "asymmetric on " + text(p) + ", " + text(q); });
    const Rational dpr = ultrametric(p, r), drq = ultrametric(r, q);
    t.check(dpq <= std::max(dpr, drq), size,
            [&] { return "strong triangle fails for " + text(p) + ", " + text(q) + " via " + text(r); });
  }
  return t;
}

Tally check_cylinder_metric(const CheckSettings& s) {
  Tally t;
  Rng rng(s.seed + 1);
  const int m = s.cylinder_m;
  std::vector<Symbol> letters;
  for (int k = 1; k < m; ++k) letters.push_back("s" + std::to_string(k));
  const Alphabet alph = Alphabet::with_blank(letters);
  const int len = s.cylinder_max_length;
  const auto words = all_words(m, len);

  // every blank-pinned ordering counts as a Gödel encoding here
  std::vector<Ordering> orderings;
  for (const auto& p : brute_permutations(m, true)) {
    std::map<Symbol, Digit> digits;
    for (int k = 0; k < m; ++k) digits[alph.symbols()[static_cast<std::size_t>(k)]] = p[static_cast<std::size_t>(k)];
    orderings.emplace_back(alph, digits, true);
  }
  auto to_seq = [&](const Digits& d, const Word& extension) {
    OneSidedSequence q{alph, {}, {}};
    for (Digit x : d) q.prefix.push_back(alph.symbols()[static_cast<std::size_t>(x)]);
    q.prefix.insert(q.prefix.end(), extension.begin(), extension.end());
    return q;
  };
  auto compare = [&](const OneSidedSequence& p, const OneSidedSequence& q, const Ordering& ord) {
    const Rational d = ultrametric(p, q);
    const Rational xp = godel_encode(p, ord), xq = godel_encode(q, ord);
    for (int n = 0; n <= len; ++n) {
      const Rational scale = power(m, n);
      bool close = d <= power(m, -n);
      bool same_interval = floor_to_int(xp * scale) == floor_to_int(xq * scale);
      t.check(close == same_interval, p.prefix.size() + q.prefix.size(), [&] {
        return "n=" + std::to_string(n) + " p=" + format_word(p.prefix) + " q=" + format_word(q.prefix) +
               ": d=" + to_string(d) + " but psi=" + to_string(xp) + ", " + to_string(xq);
      });
    }
  };
  for (const auto& ord : orderings) {
    for (const auto& u : words) {
      for (const auto& v : words) compare(to_seq(u, {}), to_seq(v, {}), ord);
    }
  }
  for (int k = 0; k < s.cylinder_extensions; ++k) {
    const auto& u = words[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(words.size()) - 1))];
    const auto& v = rand_int(rng, 0, 1) ? u : words[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(words.size()) - 1))];
    auto extension = [&] {
      Word e;
      int n = rand_int(rng, 0, 6);
      for (int i = 0; i < n; ++i) e.push_back(alph.symbols()[static_cast<std::size_t>(rand_int(rng, 0, m - 1))]);
      return e;
    };
    const auto& ord = orderings[static_cast<std::size_t>(k) % orderings.size()];
    compare(to_seq(u, extension()), to_seq(v, extension()), ord);
  }
  return t;
}

Tally check_orbit_oracle(const CheckSettings& s) {
  Tally t;
  for (int m = 2; m <= s.orbit_max_m; ++m) {
    for (bool pinned : {false, true}) {
      const auto perms = brute_permutations(m, pinned);
      for (int l = 0; l <= s.orbit_max_length; ++l) {
        const auto words = all_words(m, l);
        for (const auto& w : words) {
          std::set<Digits> brute_orbit;
          for (const auto& p : perms) brute_orbit.insert(apply_perm(w, p));
          const auto lib_orbit = orbit(w, m, pinned);
          t.check(std::set<Digits>(lib_orbit.begin(), lib_orbit.end()) == brute_orbit &&
                      lib_orbit.size() == brute_orbit.size(),
                  w.size(), [&] { return "orbit of " + digits_text(w) + " (m=" + std::to_string(m) + ")"; });
          for (const auto& u : words) {
            const bool expected = brute_orbit.count(u) > 0;
            t.check(same_orbit(w, u, m, pinned) == expected, w.size(), [&] {
              return "same_orbit(" + digits_text(w) + ", " + digits_text(u) + ", m=" + std::to_string(m) +
                     (pinned ? ", pinned" : "") + ") should be " + (expected ? "true" : "false");
            });
          }
        }
      }
    }
  }
  return t;
}

Tally check_recode_group(const CheckSettings&) {
  Tally t;
  for (int m = 2; m <= 4; ++m) {
    const auto perms = all_permutations(m, false);
    const Permutation id = Permutation::identity(m);
    for (int l = 0; l <= 5; ++l) {
      for (const auto& w : all_words(m, l)) {
        t.check(recode(w, id) == w, w.size(), [&] { return "identity moves " + digits_text(w); });
        for (const auto& pi : perms) {
          const Digits pw = recode(w, pi);
          t.check(recode(pw, pi.inverse()) == w, w.size(), [&] { return "inverse law fails on " + digits_text(w); });
          // composition only needs a few partners per π to cover the law
          for (std::size_t k = 0; k < perms.size(); k += 5) {
            const Permutation& sigma = perms[k];
            t.check(recode(recode(w, sigma), pi) == recode(w, compose(pi, sigma)), w.size(),
                    [&] { return "composition law fails on " + digits_text(w); });
          }
        }
      }
    }
  }
  return t;
}

// Class map against brute-force orbit keys.
void check_class_map(Tally& t, const PatternClassMap& map) {
  const bool joint = map.mode == PartitionMode::Joint;
  const auto left_perms = brute_permutations(map.m_left, map.blank_pinned);
  const auto right_perms = brute_permutations(map.m_right, map.blank_pinned);
  auto key = [&](std::size_t cell) {
    Digits l = map.left_digits(cell), r = map.right_digits(cell);
    if (joint) {
      Digits both = l;
      both.insert(both.end(), r.begin(), r.end());
      return std::pair{orbit_key(both, left_perms), Digits{}};
    }
    return std::pair{orbit_key(l, left_perms), orbit_key(r, right_perms)};
  };
  const std::string where = "m=" + std::to_string(map.m_left) + "/" + std::to_string(map.m_right) +
                            " l=" + std::to_string(map.l) + " r=" + std::to_string(map.r) + " " +
                            to_string(map.mode) + (map.blank_pinned ? " pinned" : "");

  // totality and disjointness: members() partitions the cell set
  std::vector<int> seen(map.cell_count(), 0);
  bool ids_ok = static_cast<int>(map.class_of.size()) == static_cast<int>(map.cell_count());
  for (int c = 0; c < map.class_count; ++c) {
    auto members = map.members(c);
    ids_ok = ids_ok && !members.empty();
    for (auto cell : members) ++seen[cell];
  }
  bool covered = std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
  t.check(ids_ok && covered, 0, [&] { return where + ": classes do not partition the cells"; });

  std::map<std::pair<Digits, Digits>, int> class_of_key;
  std::set<int> classes_used;
  for (std::size_t cell = 0; cell < map.cell_count(); ++cell) {
    auto k = key(cell);
    auto [it, fresh] = class_of_key.emplace(k, map.class_of[cell]);
    bool good = fresh ? classes_used.insert(map.class_of[cell]).second : it->second == map.class_of[cell];
    t.check(good, map.l + map.r, [&] {
      return where + ": cell " + std::to_string(cell) + " (" + digits_text(map.left_digits(cell)) + " | " +
             digits_text(map.right_digits(cell)) + ") has class " + std::to_string(map.class_of[cell]);
    });
  }
}

Tally check_partition(const CheckContext& c) {
  Tally t;
  for (int m = 2; m <= 3; ++m) {
    for (int l = 1; l <= 4; ++l) {
      for (bool pinned : {false, true}) check_class_map(t, interval_partition(m, l, pinned));
    }
  }
  for (auto mode : {PartitionMode::Joint, PartitionMode::Product}) {
    for (bool pinned : {false, true}) {
      check_class_map(t, square_partition(3, 2, 3, mode, pinned));
      check_class_map(t, square_partition(2, 2, 3, mode, pinned));
    }
  }
  if (!c.encodings.empty()) {
    const Encoding& e = c.encodings.front();
    check_class_map(t, square_partition(e.stack.m(), c.window.l, e.input.m(), c.window.r, PartitionMode::Product, true));
  }
  return t;
}

// ---------------------------------------------------------------------------

struct RandomMachine {
  VersatileShift machine;
  Encoding encoding;
  std::vector<Symbol> stack_symbols;
  std::vector<Symbol> input_symbols;
};

Ordering random_ordering(Rng& rng, const Alphabet& alph) {
  std::vector<int> digits(static_cast<std::size_t>(alph.size()) - 1);
  std::iota(digits.begin(), digits.end(), 1);
  std::shuffle(digits.begin(), digits.end(), rng);
  std::map<Symbol, Digit> map{{std::string(kBlank), 0}};
  for (std::size_t k = 1; k < alph.symbols().size(); ++k) map[alph.symbols()[k]] = digits[k - 1];
  return Ordering(alph, map, true);
}

RandomMachine random_machine(Rng& rng, int index) {
  std::vector<Symbol> st, in;
  const int ks = rand_int(rng, 1, 2), ki = rand_int(rng, 1, 2);
  for (int k = 0; k < ks; ++k) st.push_back("Z" + std::to_string(k));
  for (int k = 0; k < ki; ++k) in.push_back("t" + std::to_string(k));
  const Dod dod{rand_int(rng, 1, 2), rand_int(rng, 1, 2)};
  auto pick = [&](const std::vector<Symbol>& from, int len) {
    std::vector<Slot> out;
    for (int k = 0; k < len; ++k) out.push_back(Slot::sym(from[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(from.size()) - 1))]));
    return out;
  };
  // rules read full windows of non-blank symbols, so distinct windows can
  // never both match; half of them ignore the input side entirely
  const bool stack_only = rand_int(rng, 0, 1) == 0;
  std::vector<VsRule> rules;
  std::vector<std::pair<std::vector<Slot>, std::vector<Slot>>> seen;
  const int attempts = rand_int(rng, 2, 8);
  for (int k = 0; k < attempts; ++k) {
    auto left = pick(st, dod.l);
    auto right = stack_only ? std::vector<Slot>{} : pick(in, dod.r);
    if (std::find(seen.begin(), seen.end(), std::pair{left, right}) != seen.end()) continue;
    seen.emplace_back(left, right);
    const int push = rand_int(rng, 0, dod.l + 1), write = stack_only ? 0 : rand_int(rng, 0, dod.r + 1);
    rules.push_back({{left, right}, {pick(st, push), pick(in, write)}, 0, "rule" + std::to_string(rules.size())});
  }
  Alphabet sa = Alphabet::with_blank(st), ia = Alphabet::with_blank(in);
  VersatileShift vs(sa, ia, dod, std::move(rules));
  Encoding enc{"random" + std::to_string(index), random_ordering(rng, ia), random_ordering(rng, sa)};
  return {std::move(vs), std::move(enc), st, in};
}

Word random_word(Rng& rng, const std::vector<Symbol>& symbols, int max_len) {
  Word w;
  int n = rand_int(rng, 0, max_len);
  for (int k = 0; k < n; ++k) w.push_back(symbols[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(symbols.size()) - 1))]);
  return w;
}

std::vector<Symbol> non_blank(const Alphabet& a) {
  std::vector<Symbol> out;
  for (const auto& s : a.symbols()) {
    if (!a.is_blank(s)) out.push_back(s);
  }
  return out;
}

void check_commutes(Tally& t, const VersatileShift& vs, const Nda& nda, const DottedSequence& s, const std::string& where) {
  const Encoding& enc = nda.encoding();
  const StepResult r = vs_step(vs, s);
  const PhasePoint lhs = encode_tape(r.next, enc);
  const PhasePoint p = encode_tape(s, enc);
  PhasePoint rhs;
  std::string error;
  try {
    rhs = nda.step(p);
  } catch (const std::exception& e) {
    error = e.what();
  }
  t.check(error.empty() && lhs == rhs, s.stack.size() + s.input.size(), [&] {
    CellLocation loc = nda.decode_point(p);
    return where + ": tape '" + format_dotted(s) + "' (cell " + std::to_string(loc.i) + "," + std::to_string(loc.j) +
           "): encode(vs_step) = " + to_string(lhs) + ", nda_step(encode) = " +
           (error.empty() ? to_string(rhs) : "error: " + error);
  });
}

Tally check_commutation(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  Rng rng(s.seed + 2);
  if (c.machine) {
    const VersatileShift& vs = *c.machine;
    const auto st = non_blank(vs.stack_alphabet()), in = non_blank(vs.input_alphabet());
    for (const Encoding& enc : c.encodings) {
      const Nda nda = checked_nda(c, s, enc);
      const std::string where = "encoding " + enc.name;
      DottedSequence cur = c.start;
      for (int k = 0; k < c.max_steps; ++k) {
        check_commutes(t, vs, nda, cur, where + " step " + std::to_string(k));
        cur = vs_step(vs, cur).next;
      }
      // one tape per cell, so every cell's map is exercised
      for (const NdaCell& cell : nda.cells()) {
        Word stack = enc.stack.word(cell.stack_window), input = enc.input.word(cell.input_window);
        check_commutes(t, vs, nda, DottedSequence(stack, input), where);
        Word stack_tail = random_word(rng, st, 3), input_tail = random_word(rng, in, 3);
        stack.insert(stack.end(), stack_tail.begin(), stack_tail.end());
        input.insert(input.end(), input_tail.begin(), input_tail.end());
        check_commutes(t, vs, nda, DottedSequence(stack, input), where);
      }
      for (int k = 0; k < s.random_tapes; ++k) {
        check_commutes(t, vs, nda, DottedSequence(random_word(rng, st, 5), random_word(rng, in, 5)), where);
      }
    }
  }
  for (int k = 0; k < s.random_machines; ++k) {
    RandomMachine rm = random_machine(rng, k);
    const Nda nda = from_versatile_shift(rm.machine, rm.encoding);
    for (int n = 0; n < s.random_tapes; ++n) {
      DottedSequence tape(random_word(rng, rm.stack_symbols, 4), random_word(rng, rm.input_symbols, 4));
      check_commutes(t, rm.machine, nda, tape, "random machine " + std::to_string(k));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

struct NetworkRun {
  Nda nda;
  NetworkSpec spec;
  PhasePoint y0;
  Trajectory trajectory;
};

std::vector<NetworkRun> network_runs(const CheckContext& c, const CheckSettings& s) {
  std::vector<NetworkRun> out;
  for (const Encoding& enc : c.encodings) {
    Nda nda = checked_nda(c, s, enc);
    NetworkSpec spec = synthesize(nda);
    PhasePoint y0 = encode_tape(c.start, enc);
    Trajectory tr = na_run(spec, embed(spec, y0), c.max_steps);
    out.push_back({std::move(nda), std::move(spec), y0, std::move(tr)});
  }
  return out;
}

// Start points for the per-cell runs: each cell's lower left corner.
PhasePoint cell_corner(const NdaCell& cell) { return {cell.input_interval.lo, cell.stack_interval.lo}; }

Tally check_na_soundness(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  for (const auto& run : network_runs(c, s)) {
    const std::string name = run.nda.encoding().name;
    t.check(run.spec.n() == synthesized_unit_count(run.nda.input_cells(), run.nda.stack_cells()), 0,
            [&] { return name + ": unit count " + std::to_string(run.spec.n()); });
    NdaComparison cmp = compare_with_nda(run.trajectory, run.nda, run.y0, c.na_tolerance);
    for (std::size_t k = 0; k < cmp.deviation.size(); ++k) {
      t.check(cmp.deviation[k] <= c.na_tolerance, k, [&] {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", cmp.deviation[k]);
        return name + ": macro step " + std::to_string(k) + " deviates by " + buf;
      });
    }
    for (const NdaCell& cell : run.nda.cells()) {
      const PhasePoint p = cell_corner(cell);
      NdaComparison one = compare_with_nda(na_run(run.spec, embed(run.spec, p), 1), run.nda, p, c.na_tolerance);
      t.check(one.within_tolerance, 1, [&] { return name + ": one step from corner " + to_string(p); });
    }
  }
  return t;
}

Tally check_state_bounds(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  auto scan = [&](const Trajectory& tr, const std::string& where) {
    for (const auto& state : tr.states) {
      bool ok = std::all_of(state.x.begin(), state.x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
      t.check(ok, static_cast<std::size_t>(state.t), [&] { return where + ": micro step " + std::to_string(state.t); });
    }
  };
  for (const auto& run : network_runs(c, s)) {
    scan(run.trajectory, run.nda.encoding().name);
    for (const NdaCell& cell : run.nda.cells()) {
      scan(na_run(run.spec, embed(run.spec, cell_corner(cell)), 2),
           run.nda.encoding().name + " from " + to_string(cell_corner(cell)));
    }
  }
  return t;
}

Tally check_bsl_one_hot(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  auto scan = [&](const NetworkRun& run, const Trajectory& tr, const PhasePoint& y0, const std::string& where) {
    const auto orbit = nda_orbit(run.nda, y0, static_cast<int>(tr.macro_steps()));
    for (std::size_t k = 0; k < tr.macro_steps(); ++k) {
      const auto& x = tr.states[k * static_cast<std::size_t>(tr.micro_steps_per_macro) + 1];
      const auto selected = bsl_selected_cells(run.spec, x);
      const CellLocation loc = run.nda.decode_point(orbit[k]);
      bool ok = selected.size() == 1 && selected[0] == std::pair{loc.i, loc.j};
      t.check(ok, k, [&] {
        return where + ": macro step " + std::to_string(k) + " selects " + std::to_string(selected.size()) +
               " cells, expected only (" + std::to_string(loc.i) + "," + std::to_string(loc.j) + ")";
      });
    }
  };
  for (const auto& run : network_runs(c, s)) {
    scan(run, run.trajectory, run.y0, run.nda.encoding().name);
    for (const NdaCell& cell : run.nda.cells()) {
      const PhasePoint p = cell_corner(cell);
      scan(run, na_run(run.spec, embed(run.spec, p), 1), p, run.nda.encoding().name + " from " + to_string(p));
    }
  }
  return t;
}

Tally check_determinism(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  for (const auto& run : network_runs(c, s)) {
    Trajectory again = na_run(run.spec, embed(run.spec, run.y0), c.max_steps);
    t.check(again.states == run.trajectory.states, 0, [&] { return run.nda.encoding().name + ": reruns differ"; });
    // a fresh synthesis must give the same network
    NetworkSpec spec2 = synthesize(run.nda);
    t.check(spec2.weights == run.spec.weights && spec2.bias == run.spec.bias, 0,
            [&] { return run.nda.encoding().name + ": synthesis is not deterministic"; });
  }
  return t;
}

// ---------------------------------------------------------------------------

std::vector<PhasePoint> rectangle_points(const Window& w) {
  std::vector<PhasePoint> out;
  const std::size_t n_in = checked_power(w.m_in, w.r, kDefaultMaxCells);
  const std::size_t n_st = checked_power(w.m_st, w.l, kDefaultMaxCells);
  const Rational hw_in = power(w.m_in, -w.r) / 2, hw_st = power(w.m_st, -w.l) / 3;
  for (std::size_t i = 0; i < n_in; ++i) {
    for (std::size_t j = 0; j < n_st; ++j) {
      PhasePoint corner{Rational(static_cast<long long>(i)) * power(w.m_in, -w.r),
                        Rational(static_cast<long long>(j)) * power(w.m_st, -w.l)};
      out.push_back(corner);
      out.push_back({corner.y1 + hw_in, corner.y2 + hw_st});
    }
  }
  return out;
}

std::vector<PermutationPair> pairs_for(const Window& w, bool diagonal_only) {
  std::vector<PermutationPair> out;
  for (auto& pair : all_permutation_pairs(w.m_in, w.m_st)) {
    if (!diagonal_only || pair.input == pair.stack) out.push_back(pair);
  }
  return out;
}

std::string pair_text(const PermutationPair& pi) {
  auto text = [](const Permutation& p) {
    std::string s = "(";
    for (std::size_t k = 0; k < p.image().size(); ++k) s += (k ? " " : "") + std::to_string(p.image()[k]);
    return s + ")";
  };
  return "π_in=" + text(pi.input) + " π_st=" + text(pi.stack);
}

void check_invariance(Tally& t, const Window& w, PartitionMode mode, std::uint64_t seed) {
  const StepObservableSpec spec = make_step_observable(w, seed, mode);
  const auto points = rectangle_points(w);
  for (const auto& pi : pairs_for(w, mode == PartitionMode::Joint)) {
    for (const auto& p : points) {
      const PhasePoint q = rho_pi(p, pi, w);
      t.check(step_observable(spec, q) == step_observable(spec, p), 0, [&] {
        return std::string("f(ρ_π x) != f(x) at ") + to_string(p) + " with " + pair_text(pi) + " (" +
               to_string(mode) + ")";
      });
    }
  }
}

Tally check_step_invariance(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  check_invariance(t, Window{2, 3, 3, 3}, PartitionMode::Product, c.observable_seed);
  check_invariance(t, Window{2, 3, 3, 3}, PartitionMode::Joint, c.observable_seed);
  if (c.encodings.empty()) return t;

  Window w = c.window;
  w.m_in = c.encodings.front().input.m();
  w.m_st = c.encodings.front().stack.m();
  if (c.mode == PartitionMode::Product || w.m_in == w.m_st) check_invariance(t, w, c.mode, c.observable_seed);

  // the step observable agrees across encodings along the run, both on the
  // exact orbit and on the network
  const StepObservableSpec spec = make_step_observable(w, c.observable_seed, c.mode);
  const auto runs = network_runs(c, s);
  for (std::size_t a = 0; a < runs.size(); ++a) {
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      const auto oa = nda_orbit(runs[a].nda, runs[a].y0, c.max_steps);
      const auto ob = nda_orbit(runs[b].nda, runs[b].y0, c.max_steps);
      for (int k = 0; k <= c.max_steps; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        bool ok = step_observable(spec, oa[ks]) == step_observable(spec, ob[ks]) &&
                  step_observable(spec, runs[a].trajectory.macro(ks)) ==
                      step_observable(spec, runs[b].trajectory.macro(ks));
        t.check(ok, ks, [&] {
          return "step " + std::to_string(k) + ": f differs between " + runs[a].nda.encoding().name + " and " +
                 runs[b].nda.encoding().name;
        });
      }
    }
  }
  return t;
}

void check_group_laws(Tally& t, const Window& w, const std::vector<PermutationPair>& pairs,
                      const std::vector<PermutationPair>& partners) {
  const auto points = rectangle_points(w);
  // not invariant, so the α law is not vacuous
  Observable<PhasePoint> f = [](const PhasePoint& p) { return to_double(p.y1) + std::sqrt(2.0) * to_double(p.y2); };
  const PermutationPair id(Permutation::identity(w.m_in), Permutation::identity(w.m_st));
  for (const auto& pi : pairs) {
    const auto alpha_pi_f = alpha_pi(f, pi, w);
    for (const auto& p : points) {
      t.check(rho_pi(rho_pi(p, pi, w), inverse(pi), w) == p, 0,
              [&] { return "ρ_{π⁻¹} ρ_π moves " + to_string(p) + " for " + pair_text(pi); });
      t.check(rho_pi(p, id, w) == p, 0, [&] { return "ρ_id moves " + to_string(p); });
    }
    for (const auto& sigma : partners) {
      const PermutationPair ps = compose(pi, sigma);
      // α_{π∘σ} = α_σ ∘ α_π
      const auto lhs = alpha_pi(f, ps, w);
      const auto rhs = alpha_pi(alpha_pi_f, sigma, w);
      for (const auto& p : points) {
        t.check(rho_pi(p, ps, w) == rho_pi(rho_pi(p, sigma, w), pi, w), 0, [&] {
          return "ρ_{π∘σ} != ρ_π ρ_σ at " + to_string(p) + " for " + pair_text(pi) + " / " + pair_text(sigma);
        });
        t.check(lhs(p) == rhs(p), 0, [&] {
          return "α_{π∘σ} != α_σ α_π at " + to_string(p) + " for " + pair_text(pi) + " / " + pair_text(sigma);
        });
      }
    }
  }
}

Tally check_group_action(const CheckContext& c, const CheckSettings& s) {
  Tally t;
  const Window small{2, 3, 3, 3};
  const auto small_pairs = pairs_for(small, false);
  check_group_laws(t, small, small_pairs, small_pairs);
  if (!c.encodings.empty()) {
    Window w = c.window;
    w.m_in = c.encodings.front().input.m();
    w.m_st = c.encodings.front().stack.m();
    auto pairs = pairs_for(w, false);
    // every π against a seeded sample of partners keeps this at desk scale
    Rng rng(s.seed + 3);
    std::vector<PermutationPair> partners;
    for (int k = 0; k < 4 && !pairs.empty(); ++k) {
      partners.push_back(pairs[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(pairs.size()) - 1))]);
    }
    check_group_laws(t, w, pairs, partners);
  }
  return t;
}

using Suite = std::function<Tally(const CheckContext&, const CheckSettings&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table = {
      {"ultrametric", [](const CheckContext&, const CheckSettings& s) { return check_ultrametric(s); }},
      {"cylinder-metric", [](const CheckContext&, const CheckSettings& s) { return check_cylinder_metric(s); }},
      {"orbit-oracle", [](const CheckContext&, const CheckSettings& s) { return check_orbit_oracle(s); }},
      {"recode-group", [](const CheckContext&, const CheckSettings& s) { return check_recode_group(s); }},
      {"partition", [](const CheckContext& c, const CheckSettings&) { return check_partition(c); }},
      {"commutation", check_commutation},
      {"na-soundness", check_na_soundness},
      {"state-bounds", check_state_bounds},
      {"bsl-one-hot", check_bsl_one_hot},
      {"determinism", check_determinism},
      {"step-invariance", check_step_invariance},
      {"group-action", check_group_action},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

Nda checked_nda(const CheckContext& context, const CheckSettings& settings, const Encoding& encoding) {
  if (!context.machine) throw ConfigError("check: no machine to build an NDA from");
  Nda nda = from_versatile_shift(*context.machine, encoding);
  if (!settings.corrupt_cell) return nda;
  if (!settings.corrupt_encoding.empty() && settings.corrupt_encoding != encoding.name) return nda;
  auto [i, j] = *settings.corrupt_cell;
  if (i >= nda.input_cells() || j >= nda.stack_cells()) {
    throw ConfigError("corrupt_cell (" + std::to_string(i) + "," + std::to_string(j) + ") is outside the " +
                      std::to_string(nda.input_cells()) + "x" + std::to_string(nda.stack_cells()) + " grid");
  }
  std::vector<NdaCell> cells = nda.cells();
  NdaCell& cell = cells[i * nda.stack_cells() + j];
  if (!cell.rule) throw ConfigError("corrupt_cell names a halting cell, whose map is already the identity");
  cell.a1 = cell.a2 = 0;
  cell.lambda1 = cell.lambda2 = 1;
  cell.label = "corrupted";
  return Nda(nda.dod(), nda.encoding(), std::move(cells));
}

CheckResult run_check(const std::string& suite, const CheckContext& context, const CheckSettings& settings) {
  for (const auto& [name, fn] : suites()) {
    if (name != suite) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    result.suite = name;
    Tally t = fn(context, settings);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.cases = t.cases;
    result.passed = t.failures == 0;
    result.detail = result.passed ? std::to_string(t.cases) + " cases"
                                  : std::to_string(t.failures) + " of " + std::to_string(t.cases) +
                                        " cases fail; smallest: " + t.counterexample;
    return result;
  }
  throw ConfigError("unknown check suite '" + suite + "'");
}

std::vector<CheckResult> run_checks(const CheckContext& context, const CheckSettings& settings) {
  std::vector<std::string> selected;
  for (const auto& s : settings.suites) {
    if (s == "all") {
      selected.insert(selected.end(), suite_names().begin(), suite_names().end());
    } else {
      selected.push_back(s);
    }
  }
  if (selected.empty()) throw ConfigError("nothing to check");
  for (const auto& s : selected) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw ConfigError("unknown check suite '" + s + "'");
    }
  }
  std::vector<CheckResult> out;
  for (const auto& s : selected) out.push_back(run_check(s, context, settings));
  return out;
}

std::string format_check_result(const CheckResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", r.seconds);
  return std::string(r.passed ? "PASS " : "FAIL ") + r.suite + " (" + time + "): " + r.detail;
}

}  // namespace symdyn
