#pragma once

// Property suites run by `symdyn check` and by the acceptance tests.  Each
// suite compares the library against an independent brute-force oracle and
// reports the first counterexample it finds.

#include "symdyn/nda.hpp"
#include "symdyn/observables.hpp"
#include "symdyn/versatile_shift.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symdyn {

struct CheckSettings {
  std::vector<std::string> suites;  // names from suite_names(); empty is an error
  std::uint64_t seed = 1;
  int orbit_max_m = 3;
  int orbit_max_length = 5;
  int cylinder_m = 3;
  int cylinder_max_length = 4;
  int cylinder_extensions = 10000;
  int ultrametric_samples = 2000;
  int random_machines = 10;
  int random_tapes = 100;
  // Fault injection: replace this cell's affine map before checking.
  std::optional<std::pair<std::size_t, std::size_t>> corrupt_cell;
  std::string corrupt_encoding;  // empty: every encoding
};

/// The machine and encodings the machine-level suites run on.
struct CheckContext {
  const VersatileShift* machine = nullptr;
  DottedSequence start;
  std::vector<Encoding> encodings;
  int max_steps = 6;
  Window window;  // m_in / m_st are taken from the encodings
  PartitionMode mode = PartitionMode::Product;
  std::uint64_t observable_seed = 0;
  double na_tolerance = 1e-9;
};

struct CheckResult {
  std::string suite;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // counterexample on failure, summary otherwise
  double seconds = 0;
};

const std::vector<std::string>& suite_names();

/// The NDA for `encoding`, with the configured cell corruption applied.
Nda checked_nda(const CheckContext& context, const CheckSettings& settings, const Encoding& encoding);

/// Throws ConfigError for an unknown suite name.
CheckResult run_check(const std::string& suite, const CheckContext& context, const CheckSettings& settings);

/// Throws ConfigError("nothing to check") when no suite is selected; "all"
/// selects every suite.
std::vector<CheckResult> run_checks(const CheckContext& context, const CheckSettings& settings);

std::string format_check_result(const CheckResult& result);

}  // namespace symdyn
