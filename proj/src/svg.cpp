#include "symdyn/svg.hpp"

#include "symdyn/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace symdyn {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string class_color(int class_id) {
  // golden-angle hue walk; lightness alternates so neighbours stay apart
  const double hue = std::fmod(class_id * 137.508, 360.0);
  const int light = 45 + 15 * (class_id % 3);
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,65%%,%d%%)", hue, light);
  return buf;
}

std::string render_step_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<ChartSeries>& series) {
  const double width = 640, height = 400, left = 70, right = 150, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pad = (y_max - y_min) * 0.05;
  y_min -= pad;
  y_max += pad;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) { return top + (1 - (y - y_min) / (y_max - y_min)) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  // integer x ticks when the range is small, as for step indices
  if (x_max - x_min <= 20) {
    for (double x = std::ceil(x_min); x <= x_max; x += 1) {
      out << "<text x=\"" << num(sx(x)) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
          << static_cast<long>(x) << "</text>\n";
    }
  }
  for (int k = 0; k <= 4; ++k) {
    double y = y_min + (y_max - y_min) * k / 4;
    out << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << num(y)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << escape(x_label)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + ph / 2 << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    // later series dashed so overlapping invariant curves stay visible
    std::string dash = k == 0 ? "" : " stroke-dasharray=\"6 4\"";
    out << "<g class=\"series\" data-name=\"" << escape(s.name) << "\">\n";
    if (!s.points.empty()) {
      out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash << " d=\"M "
          << num(sx(s.points[0].first)) << ' ' << num(sy(s.points[0].second));
      for (std::size_t i = 1; i < s.points.size(); ++i) {
        out << " H " << num(sx(s.points[i].first)) << " V " << num(sy(s.points[i].second));
      }
      out << "\"/>\n";
    }
    for (auto [x, y] : s.points) {
      out << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"3\" fill=\"" << color
          << "\" data-x=\"" << format_double(x) << "\" data-y=\"" << format_double(y) << "\"/>\n";
    }
    out << "</g>\n";
    double ly = top + 14 + 18 * static_cast<double>(k);
    out << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 36 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash << "/>\n";
    out << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_partition_svg(const PatternClassMap& map, const std::string& title) {
  const std::size_t cols = map.left_cells;
  const std::size_t rows = map.right_cells;
  const double side = 480, top = 40, left = 20;
  const double cw = side / static_cast<double>(cols);
  const double ch = rows == 1 ? 60 : side / static_cast<double>(rows);
  const double height = top + ch * static_cast<double>(rows) + 20;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side + 2 * left << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left + side / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  const bool thin = cw < 4 || ch < 4;
  for (std::size_t cell = 0; cell < map.cell_count(); ++cell) {
    const std::size_t li = cell / rows;
    const std::size_t ri = cell % rows;
    // input axis grows upwards
    const double x = left + cw * static_cast<double>(li);
    const double y = top + ch * static_cast<double>(rows - 1 - ri);
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw) << "\" height=\"" << num(ch)
        << "\" fill=\"" << class_color(map.class_of[cell]) << "\"" << (thin ? "" : " stroke=\"white\"")
        << " data-cell=\"" << cell << "\" data-class=\"" << map.class_of[cell] << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace symdyn
