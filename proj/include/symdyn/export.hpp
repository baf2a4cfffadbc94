#pragma once

// CSV writers for traces, NDA tables, networks, trajectories, partitions and
// observable series.  Doubles are written with %.17g so they read back to
// the same bits.

#include "symdyn/equality_patterns.hpp"
#include "symdyn/nda.hpp"
#include "symdyn/neural_automaton.hpp"
#include "symdyn/versatile_shift.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace symdyn {

std::string format_double(double value);

/// Quotes a field when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

/// Splits one CSV line, honouring quotes.
std::vector<std::string> csv_split(const std::string& line);

/// time,stack,input,operation
void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// i,j,I,J,a1,a2,lambda1,lambda2,label  (I and J as "[lo,hi)")
void write_nda_csv(std::ostream& out, const Nda& nda);

/// unit,layer,activation,role,bias
void write_units_csv(std::ostream& out, const NetworkSpec& spec);
/// to,from,weight; only nonzero weights
void write_weights_csv(std::ostream& out, const NetworkSpec& spec);

/// t,macro,micro,x1..xn  (macro is the step index at boundaries, empty otherwise)
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// cell,left_digits,right_digits,left_corner,right_corner,class
void write_partition_csv(std::ostream& out, const PatternClassMap& map);

struct ObservableRecord {
  std::string run_id;
  std::string encoding;
  int step = 0;
  std::string observable;
  double value = 0;

  bool operator==(const ObservableRecord&) const = default;
};

/// run_id,encoding,step,observable,value
void write_observables_csv(std::ostream& out, const std::vector<ObservableRecord>& records);
/// Throws ParseError on malformed input.
std::vector<ObservableRecord> read_observables_csv(std::istream& in);

}  // namespace symdyn
