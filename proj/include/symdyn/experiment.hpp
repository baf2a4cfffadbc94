#pragma once

// Batch experiment: grammar -> versatile shift -> NDA -> network, run under
// several encodings, observables sampled at macro-step boundaries, and a
// verdict per observable and encoding pair on whether the series agree.
//
// Config file (INI):
//
//   [experiment]
//   id = svo                  ; run id written to observables.csv
//   grammar = svo.grammar     ; relative to the config file
//   sentence = NP V NP
//   max_steps = 6
//   output = out              ; relative to the working directory
//   sampling = macro          ; or micro
//
//   [encoding.gamma.input]    ; one section pair per encoding, in file order
//   NP = 1                    ; the blank _ is always 0
//   V = 2
//   [encoding.gamma.stack]
//   ...
//
//   [observables]
//   window = 2 3              ; l stack digits, r input digits
//   seed = 2024
//   mode = product            ; or joint
//   amari = true
//   harmony = true
//   dissimilarity = true
//
//   [tolerances]
//   na = 1e-9                 ; network vs exact NDA, per coordinate
//   invariance = 0            ; max |difference| for an "invariant" verdict
//
//   [check]
//   suites = all              ; or a space separated list
//   seed = 1
//   corrupt_cell = 1 2        ; optional fault injection (i j)
//   corrupt_encoding = gamma  ; optional, default every encoding

#include "symdyn/checks.hpp"
#include "symdyn/export.hpp"
#include "symdyn/grammar.hpp"
#include "symdyn/nda.hpp"
#include "symdyn/neural_automaton.hpp"
#include "symdyn/observables.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace symdyn {

struct EncodingSpec {
  std::string name;
  std::map<Symbol, Digit> input;
  std::map<Symbol, Digit> stack;
};

struct ExperimentConfig {
  std::string run_id = "run";
  std::filesystem::path grammar;
  Word sentence;
  int max_steps = 6;
  std::filesystem::path output = "out";
  bool micro_sampling = false;
  std::vector<EncodingSpec> encodings;

  int window_l = 2;
  int window_r = 3;
  std::uint64_t seed = 2024;
  PartitionMode mode = PartitionMode::Product;
  bool amari = true;
  bool harmony = true;
  bool dissimilarity = true;

  double na_tolerance = 1e-9;
  double invariance_tolerance = 0;

  CheckSettings check;
};

/// Throws ConfigError naming the source and the offending key.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Blank-pinned orderings over the grammar's alphabets; throws ConfigError
/// when the table is not a bijection onto 1..m-1 for the non-blank symbols.
Encoding make_encoding(const EncodingSpec& spec, const Cfg& grammar);

/// Everything that follows from the config before any run.
struct ExperimentSetup {
  Cfg grammar;
  VersatileShift machine;
  std::vector<Encoding> encodings;
  DottedSequence start;
};

ExperimentSetup prepare(const ExperimentConfig& config);

/// The machine-level check context for a prepared experiment; it points
/// into `setup`, which must outlive it.
CheckContext check_context(const ExperimentSetup& setup, const ExperimentConfig& config);

struct EncodingRun {
  Encoding encoding;
  Nda nda;
  NetworkSpec network;
  std::vector<PhasePoint> orbit;  // exact NDA orbit, steps 0..max_steps
  Trajectory trajectory;
  NdaComparison comparison;
};

struct Verdict {
  std::string observable;
  std::string encoding_a;
  std::string encoding_b;  // empty when the run has a single encoding
  bool invariant = true;
  double max_deviation = 0;
  bool expected_invariant = false;
};

struct ExperimentReport {
  std::string run_id;
  RunTrace trace;
  std::vector<EncodingRun> runs;
  StepObservableSpec step_spec;
  std::vector<ObservableRecord> series;
  std::vector<Verdict> verdicts;
  bool diverged = false;  // some network run left the NDA orbit beyond tolerance
};

ExperimentReport run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kStepObservable = "step";

/// Computed from the series alone, so a report can be regenerated from its
/// CSV.  Observables and encodings keep their order of first appearance.
std::vector<Verdict> compute_verdicts(const std::vector<ObservableRecord>& series, double tolerance);
std::string format_verdicts(const std::vector<Verdict>& verdicts);

/// trace.csv, per encoding nda/units/weights/trajectory/orbit CSVs,
/// observables.csv, coefficients.csv, na_check.csv, partition.csv,
/// verdicts.txt and one SVG per observable plus partition.svg.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// 0 ok, 2 an observable expected to be invariant is not, 3 the network
/// diverged from the NDA.
int exit_code(const ExperimentReport& report);

}  // namespace symdyn
