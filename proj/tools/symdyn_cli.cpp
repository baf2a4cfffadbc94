// symdyn: parse, orbit, partition, run, check, report.
//
// Exit codes: 0 ok, 1 a check failed or an unexpected error, 2 an
// observable required to be invariant is not, 3 the network diverged from
// the NDA, 4 bad configuration or arguments.

#include "symdyn/checks.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/experiment.hpp"
#include "symdyn/export.hpp"
#include "symdyn/grammar.hpp"
#include "symdyn/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>

using namespace symdyn;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 4;

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_parse(const std::string& grammar_path, const std::string& sentence, int max_steps, const std::string& output) {
  Cfg g = load_grammar(grammar_path);
  VersatileShift vs = compile_cfg_topdown(g);
  DottedSequence s0 = initial_tape(g, split_words(sentence));
  std::ostringstream csv;
  write_trace_csv(csv, vs_run(vs, s0, max_steps));
  std::cout << csv.str();
  if (!output.empty()) write_text(output, csv.str());
  return 0;
}

// Single-character symbols unless the word has spaces.
Word tokens_of(const std::string& text) {
  if (text.find(' ') != std::string::npos || text == "ε") return split_words(text);
  Word w;
  for (char c : text) w.emplace_back(1, c);
  return w;
}

int cmd_orbit(const std::string& word_text, int m, const std::string& alphabet_text, bool pinned) {
  const Word word = tokens_of(word_text);
  std::vector<Symbol> alphabet = split_words(alphabet_text);
  if (alphabet.empty()) {
    std::set<Symbol> distinct(word.begin(), word.end());
    if (m == 0) m = std::max<int>(2, static_cast<int>(distinct.size()));
    const bool digits = std::all_of(word.begin(), word.end(), [](const Symbol& s) {
      return s.size() == 1 && std::isdigit(static_cast<unsigned char>(s[0]));
    });
    for (int k = 0; k < m; ++k) alphabet.push_back(digits ? std::to_string(k) : std::string(1, static_cast<char>('a' + k)));
  }
  if (m == 0) m = static_cast<int>(alphabet.size());
  if (static_cast<int>(alphabet.size()) != m) throw DomainError("alphabet has " + std::to_string(alphabet.size()) + " symbols, m is " + std::to_string(m));

  Digits digits;
  for (const auto& s : word) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw DomainError("'" + s + "' is not a symbol of the alphabet");
    digits.push_back(static_cast<Digit>(it - alphabet.begin()));
  }
  const bool compact = std::all_of(alphabet.begin(), alphabet.end(), [](const Symbol& s) { return s.size() == 1; });
  auto render = [&](const Digits& d) {
    if (d.empty()) return std::string("ε");
    std::string out;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (!compact && k) out += ' ';
      out += alphabet[static_cast<std::size_t>(d[k])];
    }
    return out;
  };

  const auto members = orbit(digits, m, pinned);
  long group = 1;
  for (int k = 2; k <= (pinned ? m - 1 : m); ++k) group *= k;
  std::cout << "orbit of " << render(digits) << " (m=" << m << (pinned ? ", blank pinned" : "") << "): "
            << members.size() << " members\n";
  for (const auto& d : members) std::cout << render(d) << '\n';
  std::cout << "pattern " << format_pattern(pattern_of(digits, pinned)) << '\n';
  std::cout << "group order " << group << ", orbit size divides it: " << (group % static_cast<long>(members.size()) == 0 ? "yes" : "no")
            << '\n';
  return 0;
}

int cmd_partition(int m, int l, int r, int m_right, const std::string& mode_text, bool pinned, std::size_t max_cells,
                  const std::string& output) {
  PatternClassMap map = r == 0 ? interval_partition(m, l, pinned, max_cells)
                               : square_partition(m, l, m_right == 0 ? m : m_right, r, parse_partition_mode(mode_text),
                                                  pinned, max_cells);
  std::ostringstream csv;
  write_partition_csv(csv, map);
  std::string title = r == 0 ? "Interval partition m=" + std::to_string(m) + " l=" + std::to_string(l)
                             : "Square partition l=" + std::to_string(l) + " r=" + std::to_string(r) + " " + mode_text;
  if (!output.empty()) {
    std::filesystem::create_directories(output);
    write_text(std::filesystem::path(output) / "partition.csv", csv.str());
    write_text(std::filesystem::path(output) / "partition.svg", render_partition_svg(map, title));
  } else {
    std::cout << csv.str();
  }
  std::cerr << map.cell_count() << " cells, " << map.class_count << " classes\n";
  return 0;
}

int cmd_run(ExperimentConfig config, const std::string& output) {
  if (!output.empty()) config.output = output;
  ExperimentReport report = run_experiment(config);
  write_report(report, config.output);
  std::cout << format_verdicts(report.verdicts);
  for (const auto& run : report.runs) {
    std::cout << run.encoding.name << ": n=" << run.network.n() << ", max NA deviation "
              << format_double(run.comparison.max_deviation) << (run.comparison.within_tolerance ? "" : " DIVERGED")
              << '\n';
  }
  std::cout << "wrote " << config.output.string() << '\n';
  return exit_code(report);
}

int cmd_check(const ExperimentConfig& config) {
  ExperimentSetup setup = prepare(config);
  CheckContext context = check_context(setup, config);
  bool all = true;
  std::vector<CheckResult> results = run_checks(context, config.check);
  for (const auto& r : results) {
    std::cout << format_check_result(r) << '\n';
    all = all && r.passed;
  }
  return all ? 0 : kExitCheckFailed;
}

int cmd_report(const std::string& csv_path, double tolerance) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open '" + csv_path + "'");
  std::cout << format_verdicts(compute_verdicts(read_observables_csv(in), tolerance));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goedel encodings, versatile shifts, dynamical and neural automata"};
  app.require_subcommand(1);

  std::string grammar, sentence, parse_out;
  int parse_steps = 1000;
  auto* parse = app.add_subcommand("parse", "Run the top-down recognizer and print its trace as CSV");
  parse->add_option("-g,--grammar", grammar, "Grammar file")->required()->check(CLI::ExistingFile);
  parse->add_option("-s,--sentence", sentence, "Space separated terminals")->required();
  parse->add_option("--max-steps", parse_steps, "Step limit")->check(CLI::PositiveNumber);
  parse->add_option("-o,--output", parse_out, "Also write the CSV here");

  std::string word, alphabet;
  int orbit_m = 0;
  bool orbit_pinned = false;
  auto* orb = app.add_subcommand("orbit", "List the recoding orbit of a word");
  orb->add_option("word", word, "Word; one symbol per character unless it contains spaces")->required();
  orb->add_option("-m", orbit_m, "Alphabet size (default: from the word)");
  orb->add_option("--alphabet", alphabet, "Space separated symbols in digit order");
  orb->add_flag("--blank-pinned", orbit_pinned, "Digit 0 is the blank and stays fixed");

  int part_m = 3, part_l = 3, part_r = 0, part_m_right = 0;
  std::string part_mode = "joint", part_out;
  bool part_pinned = false;
  std::size_t part_max = kDefaultMaxCells;
  auto* part = app.add_subcommand("partition", "Equality-pattern partition of the interval (r = 0) or the square");
  part->add_option("-m", part_m, "Alphabet size (left side)")->check(CLI::Range(2, 64));
  part->add_option("-l", part_l, "Digits on the left side")->check(CLI::NonNegativeNumber);
  part->add_option("-r", part_r, "Digits on the right side; 0 for the interval")->check(CLI::NonNegativeNumber);
  part->add_option("--m-right", part_m_right, "Alphabet size of the right side (default: m)");
  part->add_option("--mode", part_mode, "joint or product")->check(CLI::IsMember({"joint", "product"}));
  part->add_flag("--blank-pinned", part_pinned, "Digit 0 is the blank and stays fixed");
  part->add_option("--max-cells", part_max, "Refuse larger partitions");
  part->add_option("-o,--output", part_out, "Directory for partition.csv and partition.svg (default: CSV to stdout)");

  std::string config_path, run_out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<int> steps;
  auto* run = app.add_subcommand("run", "Run an experiment config and write its report");
  run->add_option("-c,--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", run_out, "Output directory (overrides the config)");
  run->add_option("--seed", seed, "Observable coefficient seed");
  run->add_option("--tolerance", tolerance, "Network vs NDA tolerance");
  run->add_option("--max-steps", steps, "Macro steps")->check(CLI::PositiveNumber);

  std::string check_config;
  std::optional<std::string> suites;
  std::optional<std::uint64_t> check_seed;
  auto* check = app.add_subcommand("check", "Run the property suites on a config's machine");
  check->add_option("-c,--config", check_config, "Experiment config")->required()->check(CLI::ExistingFile);
  check->add_option("--suites", suites, "Space separated suites, or 'all'");
  check->add_option("--seed", check_seed, "Seed for the randomized suites");
  check->footer("suites: all " + std::accumulate(suite_names().begin(), suite_names().end(), std::string(),
                                                 [](std::string a, const std::string& b) { return a + " " + b; }));

  std::string report_csv;
  double report_tol = 0;
  auto* report = app.add_subcommand("report", "Recompute the verdict table from observables.csv");
  report->add_option("csv", report_csv, "observables.csv")->required()->check(CLI::ExistingFile);
  report->add_option("--tolerance", report_tol, "Invariance tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*parse) return cmd_parse(grammar, sentence, parse_steps, parse_out);
    if (*orb) return cmd_orbit(word, orbit_m, alphabet, orbit_pinned);
    if (*part) return cmd_partition(part_m, part_l, part_r, part_m_right, part_mode, part_pinned, part_max, part_out);
    if (*run) {
      ExperimentConfig config = load_config(config_path);
      if (seed) config.seed = *seed;
      if (tolerance) config.na_tolerance = *tolerance;
      if (steps) config.max_steps = *steps;
      return cmd_run(std::move(config), run_out);
    }
    if (*check) {
      ExperimentConfig config = load_config(check_config);
      if (suites) config.check.suites = split_words(*suites);
      if (check_seed) config.check.seed = *check_seed;
      return cmd_check(config);
    }
    if (*report) return cmd_report(report_csv, report_tol);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceLimit& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return 0;
}
