#include "crescent/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace crescent {

namespace {

constexpr std::array<const char*, 8> kColors = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                                "#66a61e", "#e6ab02", "#a6761d", "#666666"};
constexpr std::array<const char*, 4> kDashes = {"none", "0.06 0.03", "0.02 0.02", "0.08 0.03 0.02 0.03"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  return s == "-0.0000" ? "0.0000" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_file_name(int class_id) { return "class_" + std::to_string(class_id) + ".svg"; }

std::string render_svg(const Realization& r, const std::string& metadata) {
  const auto& p = r.coordinates;
  const int n = static_cast<int>(p.rows());
  // SVG y grows downwards
  auto sx = [&](int k) { return p(k, 0); };
  auto sy = [&](int k) { return -p(k, 1); };

  double min_x = sx(0), max_x = sx(0), min_y = sy(0), max_y = sy(0);
  for (int k = 1; k < n; ++k) {
    min_x = std::min(min_x, sx(k));
    max_x = std::max(max_x, sx(k));
    min_y = std::min(min_y, sy(k));
    max_y = std::max(max_y, sy(k));
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-6});
  const double margin = 0.1 * span;
  const double legend_h = 0.08 * span * (n - 1) + margin;
  const double vx = min_x - margin;
  const double vy = min_y - margin;
  const double vw = (max_x - min_x) + 2 * margin;
  const double vh = (max_y - min_y) + 2 * margin + legend_h;
  const double stroke = 0.01 * span;
  const double radius = 0.025 * span;
  const double font = 0.05 * span;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw)
      << ' ' << num(vh) << "\">\n";
  out << "  <title>class " << r.class_id << "</title>\n";
  if (!metadata.empty()) out << "  <metadata>" << xml_escape(metadata) << "</metadata>\n";
  out << "  <rect x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\"" << num(vw) << "\" height=\"" << num(vh)
      << "\" fill=\"white\"/>\n";

  auto style = [&](int label) {
    const auto c = static_cast<std::size_t>(label - 1);
    std::string s = "stroke=\"" + std::string(kColors[c % kColors.size()]) + "\" stroke-width=\"" + num(stroke) + "\"";
    const char* dash = kDashes[(c / kColors.size() + c) % kDashes.size()];
    if (std::string(dash) != "none") {
      std::istringstream parts(dash);
      std::string scaled;
      double v;
      while (parts >> v) scaled += (scaled.empty() ? "" : " ") + num(v * span);
      s += " stroke-dasharray=\"" + scaled + "\"";
    }
    return s;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out << "  <line x1=\"" << num(sx(i)) << "\" y1=\"" << num(sy(i)) << "\" x2=\"" << num(sx(j)) << "\" y2=\""
          << num(sy(j)) << "\" " << style(r.matrix(i, j)) << "/>\n";
    }
  }
  for (int k = 0; k < n; ++k) {
    out << "  <circle cx=\"" << num(sx(k)) << "\" cy=\"" << num(sy(k)) << "\" r=\"" << num(radius)
        << "\" fill=\"black\"/>\n";
    out << "  <text x=\"" << num(sx(k) + 1.2 * radius) << "\" y=\"" << num(sy(k) - 1.2 * radius)
        << "\" font-size=\"" << num(font) << "\" font-family=\"sans-serif\">" << (k + 1) << "</text>\n";
  }
  const double legend_top = max_y + margin;
  for (int label = 1; label < n; ++label) {
    const double y = legend_top + 0.08 * span * label;
    out << "  <line x1=\"" << num(min_x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(min_x + 0.2 * span)
        << "\" y2=\"" << num(y) << "\" " << style(label) << "/>\n";
    char value[32];
    std::snprintf(value, sizeof value, "%.6f", r.assignment[label]);
    out << "  <text x=\"" << num(min_x + 0.25 * span) << "\" y=\"" << num(y + 0.3 * font) << "\" font-size=\""
        << num(font) << "\" font-family=\"sans-serif\">d" << label << " = " << value << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crescent
