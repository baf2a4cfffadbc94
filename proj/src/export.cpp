#include "symdyn/export.hpp"

#include "symdyn/errors.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

namespace symdyn {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  // RFC 4180: a doubled quote inside a quoted field is a literal quote
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c != '"') {
        out.back() += c;
      } else if (k + 1 < line.size() && line[k + 1] == '"') {
        out.back() += '"';
        ++k;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  return out;
}

namespace {

std::string interval_text(const Interval& iv) { return "[" + to_string(iv.lo) + "," + to_string(iv.hi) + ")"; }

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "time,stack,input,operation\n";
  for (const TraceRow& row : trace.rows) {
    out << row.time << ',' << csv_field(format_side(row.state.left_tape())) << ','
        << csv_field(format_side(row.state.input)) << ',' << csv_field(row.operation) << '\n';
  }
}

void write_nda_csv(std::ostream& out, const Nda& nda) {
  out << "i,j,I,J,a1,a2,lambda1,lambda2,label\n";
  for (const NdaCell& c : nda.cells()) {
    out << c.i << ',' << c.j << ',' << csv_field(interval_text(c.input_interval)) << ','
        << csv_field(interval_text(c.stack_interval)) << ',' << to_string(c.a1) << ',' << to_string(c.a2) << ','
        << to_string(c.lambda1) << ',' << to_string(c.lambda2) << ',' << csv_field(c.label) << '\n';
  }
}

void write_units_csv(std::ostream& out, const NetworkSpec& spec) {
  out << "unit,layer,activation,role,bias\n";
  for (std::size_t u = 0; u < spec.n(); ++u) {
    const Unit& unit = spec.units[u];
    out << u << ',' << to_string(unit.layer) << ',' << to_string(unit.activation) << ',' << csv_field(unit.role)
        << ',' << format_double(spec.bias[u]) << '\n';
  }
}

void write_weights_csv(std::ostream& out, const NetworkSpec& spec) {
  out << "to,from,weight\n";
  for (std::size_t to = 0; to < spec.n(); ++to) {
    for (std::size_t from = 0; from < spec.n(); ++from) {
      double w = spec.weight(to, from);
      if (w != 0.0) out << to << ',' << from << ',' << format_double(w) << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().x.size();
  out << "t,macro,micro";
  for (std::size_t k = 1; k <= n; ++k) out << ",x" << k;
  out << '\n';
  const long per = trajectory.micro_steps_per_macro;
  for (const NeuralState& s : trajectory.states) {
    out << s.t << ',';
    if (s.t % per == 0) out << s.t / per;
    out << ',' << s.t % per;
    for (double v : s.x) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_partition_csv(std::ostream& out, const PatternClassMap& map) {
  out << "cell,left_digits,right_digits,left_corner,right_corner,class\n";
  for (std::size_t cell = 0; cell < map.cell_count(); ++cell) {
    out << cell << ',' << format_digits(map.left_digits(cell)) << ',' << format_digits(map.right_digits(cell)) << ','
        << to_string(map.left_corner(cell)) << ',' << to_string(map.right_corner(cell)) << ',' << map.class_of[cell]
        << '\n';
  }
}

void write_observables_csv(std::ostream& out, const std::vector<ObservableRecord>& records) {
  out << "run_id,encoding,step,observable,value\n";
  for (const auto& r : records) {
    out << csv_field(r.run_id) << ',' << csv_field(r.encoding) << ',' << r.step << ',' << csv_field(r.observable)
        << ',' << format_double(r.value) << '\n';
  }
}

std::vector<ObservableRecord> read_observables_csv(std::istream& in) {
  std::vector<ObservableRecord> out;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("observables csv:" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "run_id,encoding,step,observable,value") fail("unexpected header '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    try {
      f = csv_split(line);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    if (f.size() != 5) fail("expected 5 fields, got " + std::to_string(f.size()));
    ObservableRecord r{f[0], f[1], 0, f[3], 0};
    auto [p, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.step);
    if (ec != std::errc{} || p != f[2].data() + f[2].size()) fail("bad step '" + f[2] + "'");
    // strtod handles every %.17g rendering, including inf and nan
    char* end = nullptr;
    r.value = std::strtod(f[4].c_str(), &end);
    if (f[4].empty() || *end != '\0') fail("bad value '" + f[4] + "'");
    out.push_back(std::move(r));
  }
  if (line_no == 0) fail("empty file");
  return out;
}

}  // namespace symdyn
