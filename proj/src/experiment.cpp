#include "symdyn/experiment.hpp"

#include "symdyn/errors.hpp"
#include "symdyn/svg.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace symdyn {

namespace pt = boost::property_tree;

namespace {

class ConfigReader {
 public:
  explicit ConfigReader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& where, const std::string& why) const {
    throw ConfigError(source_ + ": [" + where + "]: " + why);
  }

  template <class T>
  T number(const std::string& section, const std::string& key, const std::string& text) const {
    try {
      std::size_t used = 0;
      T value;
      if constexpr (std::is_same_v<T, int>) {
        value = std::stoi(text, &used);
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
        value = std::stoull(text, &used);
      } else {
        value = std::stod(text, &used);
      }
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return value;
    } catch (const std::exception&) {
      fail(section, key + " = '" + text + "' is not a valid number");
    }
  }

  bool boolean(const std::string& section, const std::string& key, const std::string& text) const {
    if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
    if (text == "false" || text == "no" || text == "off" || text == "0") return false;
    fail(section, key + " = '" + text + "' is not a boolean");
  }

 private:
  std::string source_;
};

bool valid_name(const std::string& name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigReader r(source);
  ExperimentConfig c;
  bool have_grammar = false, have_sentence = false;
  std::map<std::string, std::size_t> encoding_index;
  std::map<std::string, std::set<std::string>> encoding_sides;

  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) r.fail(section, "key outside of any section");
    auto each = [&](auto&& handle) {
      for (const auto& [key, node] : body) handle(key, node.data());
    };
    if (section == "experiment") {
      each([&](const std::string& key, const std::string& v) {
        if (key == "id") {
          if (!valid_name(v)) r.fail(section, "id must be letters, digits, '_' or '-'");
          c.run_id = v;
        } else if (key == "grammar") {
          c.grammar = base_dir / v;
          have_grammar = !v.empty();
        } else if (key == "sentence") {
          c.sentence = split_words(v);
          have_sentence = true;
        } else if (key == "max_steps") {
          c.max_steps = r.number<int>(section, key, v);
        } else if (key == "output") {
          c.output = v;
        } else if (key == "sampling") {
          if (v != "macro" && v != "micro") r.fail(section, "sampling must be macro or micro");
          c.micro_sampling = v == "micro";
        } else {
          r.fail(section, "unknown key '" + key + "'");
        }
      });
    } else if (section.rfind("encoding.", 0) == 0) {
      const std::string rest = section.substr(9);
      const auto dot = rest.rfind('.');
      const std::string name = dot == std::string::npos ? "" : rest.substr(0, dot);
      const std::string side = dot == std::string::npos ? "" : rest.substr(dot + 1);
      if (!valid_name(name) || (side != "input" && side != "stack")) {
        r.fail(section, "encoding sections are [encoding.<name>.input] and [encoding.<name>.stack]");
      }
      if (!encoding_index.count(name)) {
        encoding_index[name] = c.encodings.size();
        c.encodings.push_back({name, {}, {}});
      }
      encoding_sides[name].insert(side);
      auto& table = side == "input" ? c.encodings[encoding_index[name]].input : c.encodings[encoding_index[name]].stack;
      each([&](const std::string& key, const std::string& v) { table[key] = r.number<int>(section, key, v); });
    } else if (section == "observables") {
      each([&](const std::string& key, const std::string& v) {
        if (key == "window") {
          std::istringstream ws(v);
          std::string extra;
          if (!(ws >> c.window_l >> c.window_r) || (ws >> extra)) r.fail(section, "window must be two integers 'l r'");
        } else if (key == "seed") {
          c.seed = r.number<std::uint64_t>(section, key, v);
        } else if (key == "mode") {
          try {
            c.mode = parse_partition_mode(v);
          } catch (const std::exception& e) {
            r.fail(section, e.what());
          }
        } else if (key == "amari") {
          c.amari = r.boolean(section, key, v);
        } else if (key == "harmony") {
          c.harmony = r.boolean(section, key, v);
        } else if (key == "dissimilarity") {
          c.dissimilarity = r.boolean(section, key, v);
        } else {
          r.fail(section, "unknown key '" + key + "'");
        }
      });
    } else if (section == "tolerances") {
      each([&](const std::string& key, const std::string& v) {
        double value = r.number<double>(section, key, v);
        if (!(value >= 0) || !std::isfinite(value)) r.fail(section, key + " must be a finite value >= 0");
        if (key == "na") {
          c.na_tolerance = value;
        } else if (key == "invariance") {
          c.invariance_tolerance = value;
        } else {
          r.fail(section, "unknown key '" + key + "'");
        }
      });
    } else if (section == "check") {
      each([&](const std::string& key, const std::string& v) {
        if (key == "suites") {
          c.check.suites = split_words(v);
        } else if (key == "seed") {
          c.check.seed = r.number<std::uint64_t>(section, key, v);
        } else if (key == "corrupt_cell") {
          std::istringstream cs(v);
          long i = -1, j = -1;
          std::string extra;
          if (!(cs >> i >> j) || (cs >> extra) || i < 0 || j < 0) r.fail(section, "corrupt_cell must be two indices 'i j'");
          c.check.corrupt_cell = std::pair{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
        } else if (key == "corrupt_encoding") {
          c.check.corrupt_encoding = v;
        } else if (key == "random_machines") {
          c.check.random_machines = r.number<int>(section, key, v);
        } else if (key == "random_tapes") {
          c.check.random_tapes = r.number<int>(section, key, v);
        } else if (key == "cylinder_extensions") {
          c.check.cylinder_extensions = r.number<int>(section, key, v);
        } else {
          r.fail(section, "unknown key '" + key + "'");
        }
      });
    } else {
      r.fail(section, "unknown section");
    }
  }

  if (!have_grammar) r.fail("experiment", "grammar is required");
  if (!have_sentence) r.fail("experiment", "sentence is required (it may be empty)");
  if (c.max_steps < 1) r.fail("experiment", "max_steps must be at least 1");
  if (c.encodings.empty()) r.fail("encoding", "at least one encoding is required");
  for (const auto& [name, sides] : encoding_sides) {
    if (sides.size() != 2) r.fail("encoding." + name, "needs both an input and a stack section");
  }
  if (c.window_l < 1 || c.window_r < 1) r.fail("observables", "window lengths must be at least 1");
  if (!c.check.corrupt_encoding.empty() && !encoding_index.count(c.check.corrupt_encoding)) {
    r.fail("check", "corrupt_encoding names no encoding");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.parent_path(), path.string());
}

Encoding make_encoding(const EncodingSpec& spec, const Cfg& grammar) {
  auto ordering = [&](const Alphabet& alph, std::map<Symbol, Digit> table, const char* side) {
    const std::string where = "encoding '" + spec.name + "' " + side + ": ";
    auto blank = table.find(std::string(kBlank));
    if (blank != table.end() && blank->second != 0) throw ConfigError(where + "the blank must be 0");
    table[std::string(kBlank)] = 0;
    for (const auto& [symbol, digit] : table) {
      if (!alph.contains(symbol)) throw ConfigError(where + "'" + symbol + "' is not a symbol of the grammar");
    }
    for (const auto& symbol : alph.symbols()) {
      if (!table.count(symbol)) throw ConfigError(where + "no digit for '" + symbol + "'");
    }
    try {
      return Ordering(alph, table, true);
    } catch (const DomainError& e) {
      throw ConfigError(where + e.what());
    }
  };
  return {spec.name, ordering(input_alphabet_of(grammar), spec.input, "input"),
          ordering(stack_alphabet_of(grammar), spec.stack, "stack")};
}

ExperimentSetup prepare(const ExperimentConfig& config) {
  Cfg grammar = load_grammar(config.grammar);
  VersatileShift machine = compile_cfg_topdown(grammar);
  std::vector<Encoding> encodings;
  for (const auto& spec : config.encodings) encodings.push_back(make_encoding(spec, grammar));
  DottedSequence start;
  try {
    start = initial_tape(grammar, config.sentence);
    machine.check_tape(start);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sentence: ") + e.what());
  }
  return {std::move(grammar), std::move(machine), std::move(encodings), std::move(start)};
}

CheckContext check_context(const ExperimentSetup& setup, const ExperimentConfig& config) {
  CheckContext c;
  c.machine = &setup.machine;
  c.start = setup.start;
  c.encodings = setup.encodings;
  c.max_steps = config.max_steps;
  c.window = Window{config.window_l, config.window_r, setup.encodings.front().stack.m(),
                    setup.encodings.front().input.m()};
  c.mode = config.mode;
  c.observable_seed = config.seed;
  c.na_tolerance = config.na_tolerance;
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentSetup setup = prepare(config);
  ExperimentReport report;
  report.run_id = config.run_id;
  report.trace = vs_run(setup.machine, setup.start, config.max_steps);

  const Window window{config.window_l, config.window_r, setup.encodings.front().stack.m(),
                      setup.encodings.front().input.m()};
  report.step_spec = make_step_observable(window, config.seed, config.mode);

  for (const Encoding& enc : setup.encodings) {
    Nda nda = from_versatile_shift(setup.machine, enc);
    NetworkSpec net = synthesize(nda);
    const PhasePoint y0 = encode_tape(setup.start, enc);
    auto orbit = nda_orbit(nda, y0, config.max_steps);
    Trajectory traj = na_run(net, embed(net, y0), config.max_steps);
    NdaComparison cmp = compare_with_nda(traj, nda, y0, config.na_tolerance);
    report.diverged = report.diverged || !cmp.within_tolerance;

    std::vector<const NeuralState*> samples;
    if (config.micro_sampling) {
      for (const auto& s : traj.states) samples.push_back(&s);
    } else {
      for (std::size_t k = 0; k <= traj.macro_steps(); ++k) samples.push_back(&traj.macro(k));
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const NeuralState& x = *samples[k];
      auto record = [&](std::string_view name, double value) {
        report.series.push_back({config.run_id, enc.name, static_cast<int>(k), std::string(name), value});
      };
      record(kStepObservable, step_observable(report.step_spec, x));
      if (config.amari) record("amari", amari(x));
      if (config.harmony) record("harmony", harmony(x, net));
      if (config.dissimilarity && k > 0) record("dissimilarity", dissimilarity(x, *samples[k - 1]));
    }
    report.runs.push_back({enc, std::move(nda), std::move(net), std::move(orbit), std::move(traj), std::move(cmp)});
  }
  report.verdicts = compute_verdicts(report.series, config.invariance_tolerance);
  return report;
}

std::vector<Verdict> compute_verdicts(const std::vector<ObservableRecord>& series, double tolerance) {
  std::vector<std::string> observables, encodings;
  std::map<std::string, std::map<std::string, std::map<int, double>>> values;
  for (const auto& r : series) {
    if (std::find(observables.begin(), observables.end(), r.observable) == observables.end()) {
      observables.push_back(r.observable);
    }
    if (std::find(encodings.begin(), encodings.end(), r.encoding) == encodings.end()) encodings.push_back(r.encoding);
    values[r.observable][r.encoding][r.step] = r.value;
  }
  std::vector<Verdict> out;
  for (const auto& obs : observables) {
    const bool expected = obs == kStepObservable;
    if (encodings.size() == 1) {
      out.push_back({obs, encodings[0], "", true, 0.0, expected});
      continue;
    }
    for (std::size_t a = 0; a < encodings.size(); ++a) {
      for (std::size_t b = a + 1; b < encodings.size(); ++b) {
        const auto& va = values[obs][encodings[a]];
        const auto& vb = values[obs][encodings[b]];
        double dev = 0;
        std::set<int> steps;
        for (const auto& [k, v] : va) steps.insert(k);
        for (const auto& [k, v] : vb) steps.insert(k);
        for (int k : steps) {
          auto ia = va.find(k), ib = vb.find(k);
          dev = (ia == va.end() || ib == vb.end()) ? std::numeric_limits<double>::infinity()
                                                   : std::max(dev, std::abs(ia->second - ib->second));
          if (std::isinf(dev)) break;
        }
        out.push_back({obs, encodings[a], encodings[b], dev <= tolerance, dev, expected});
      }
    }
  }
  return out;
}

std::string format_verdicts(const std::vector<Verdict>& verdicts) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-24s %-9s %-24s %s\n", "observable", "encodings", "invariant",
                "max_deviation", "required");
  out << line;
  for (const auto& v : verdicts) {
    const std::string pair = v.encoding_b.empty() ? v.encoding_a + " (no pairs)" : v.encoding_a + " vs " + v.encoding_b;
    std::snprintf(line, sizeof line, "%-14s %-24s %-9s %-24s %s\n", v.observable.c_str(), pair.c_str(),
                  v.invariant ? "yes" : "no", format_double(v.max_deviation).c_str(),
                  v.expected_invariant ? "yes" : "no");
    out << line;
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

template <class Fn>
void write_csv(const std::filesystem::path& path, Fn&& fn) {
  std::ostringstream out;
  fn(out);
  write_file(path, out.str());
}

}  // namespace

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_csv(dir / "trace.csv", [&](std::ostream& o) { write_trace_csv(o, report.trace); });

  std::ostringstream network;
  for (const auto& run : report.runs) {
    const std::string& name = run.encoding.name;
    write_csv(dir / ("nda_" + name + ".csv"), [&](std::ostream& o) { write_nda_csv(o, run.nda); });
    write_csv(dir / ("units_" + name + ".csv"), [&](std::ostream& o) { write_units_csv(o, run.network); });
    write_csv(dir / ("weights_" + name + ".csv"), [&](std::ostream& o) { write_weights_csv(o, run.network); });
    write_csv(dir / ("trajectory_" + name + ".csv"), [&](std::ostream& o) { write_trajectory_csv(o, run.trajectory); });
    write_csv(dir / ("orbit_" + name + ".csv"), [&](std::ostream& o) {
      o << "step,y1,y2\n";
      for (std::size_t k = 0; k < run.orbit.size(); ++k) {
        o << k << ',' << to_string(run.orbit[k].y1) << ',' << to_string(run.orbit[k].y2) << '\n';
      }
    });
    network << name << ": n=" << run.network.n() << " (MCL " << run.network.count(Layer::Mcl) << ", BSL "
            << run.network.count(Layer::Bsl) << ", LTL " << run.network.count(Layer::Ltl) << "), cells "
            << run.nda.input_cells() << "x" << run.nda.stack_cells() << ", micro steps per macro step "
            << run.network.micro_steps_per_macro << '\n';
  }
  write_file(dir / "network.txt", network.str());
  write_csv(dir / "na_check.csv", [&](std::ostream& o) {
    o << "encoding,step,deviation\n";
    for (const auto& run : report.runs) {
      for (std::size_t k = 0; k < run.comparison.deviation.size(); ++k) {
        o << csv_field(run.encoding.name) << ',' << k << ',' << format_double(run.comparison.deviation[k]) << '\n';
      }
    }
  });
  write_csv(dir / "observables.csv", [&](std::ostream& o) { write_observables_csv(o, report.series); });
  write_csv(dir / "coefficients.csv", [&](std::ostream& o) {
    o << "class,coefficient,seed\n";
    for (std::size_t k = 0; k < report.step_spec.coefficients.size(); ++k) {
      o << k << ',' << format_double(report.step_spec.coefficients[k]) << ',' << report.step_spec.seed << '\n';
    }
  });
  write_csv(dir / "partition.csv", [&](std::ostream& o) { write_partition_csv(o, report.step_spec.classes); });
  write_file(dir / "partition.svg",
             render_partition_svg(report.step_spec.classes, "Step observable classes (stack x input)"));
  write_file(dir / "verdicts.txt", format_verdicts(report.verdicts));

  std::vector<std::string> observables;
  for (const auto& r : report.series) {
    if (std::find(observables.begin(), observables.end(), r.observable) == observables.end()) {
      observables.push_back(r.observable);
    }
  }
  for (const auto& obs : observables) {
    std::vector<ChartSeries> series;
    for (const auto& r : report.series) {
      if (r.observable != obs) continue;
      auto it = std::find_if(series.begin(), series.end(), [&](const ChartSeries& s) { return s.name == r.encoding; });
      if (it == series.end()) it = series.insert(series.end(), ChartSeries{r.encoding, {}});
      it->points.emplace_back(r.step, r.value);
    }
    write_file(dir / ("observable_" + obs + ".svg"), render_step_chart(obs + " (" + report.run_id + ")", "step", obs, series));
  }
}

int exit_code(const ExperimentReport& report) {
  if (report.diverged) return 3;
  for (const auto& v : report.verdicts) {
    if (v.expected_invariant && !v.invariant) return 2;
  }
  return 0;
}

}  // namespace symdyn
