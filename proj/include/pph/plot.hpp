#pragma once

#include <algorithm>
#include <sstream>
#include <string>

#include "pph/persistence.hpp"
#include "pph/scalar.hpp"

namespace pph {

// Standalone SVG scatter of a diagram: birth on x, death on y, the diagonal,
// and a dashed top rail carrying the infinite bars. Points of multiplicity k > 1
// are labelled "×k".
inline std::string diagram_svg(const PersistenceDiagram& d) {
  constexpr double size = 400, margin = 50, rail_gap = 30;
  const double plot = size - 2 * margin - rail_gap;

  Rational hi = 1;
  for (const auto& p : d.points()) {
    hi = std::max(hi, p.birth);
    if (!p.death.is_infinite()) hi = std::max(hi, p.death.value());
  }
  const double scale = plot / hi.get_d();
  auto x = [&](const Rational& v) { return margin + v.get_d() * scale; };
  auto y = [&](const Rational& v) { return size - margin - v.get_d() * scale; };
  const double rail_y = margin;

  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " "
    << size << "\">\n";
  s << "  <title>H" << d.degree() << " persistence diagram</title>\n";
  s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "  <line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << size - margin << "\" y2=\"" << size - margin
    << "\" stroke=\"black\"/>\n";
  s << "  <line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << margin << "\" y2=\"" << rail_y << "\" stroke=\"black\"/>\n";
  s << "  <line class=\"diagonal\" x1=\"" << x(0) << "\" y1=\"" << y(0) << "\" x2=\"" << x(hi) << "\" y2=\"" << y(hi)
    << "\" stroke=\"gray\"/>\n";
  s << "  <line class=\"inf-rail\" x1=\"" << margin << "\" y1=\"" << rail_y << "\" x2=\"" << size - margin << "\" y2=\"" << rail_y
    << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  s << "  <text x=\"" << margin - 8 << "\" y=\"" << rail_y + 4 << "\" text-anchor=\"end\" font-size=\"12\">∞</text>\n";
  s << "  <text x=\"" << size / 2 << "\" y=\"" << size - 15 << "\" text-anchor=\"middle\" font-size=\"12\">birth (max "
    << format_rational(hi) << ")</text>\n";
  s << "  <text x=\"15\" y=\"" << size / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 " << size / 2
    << ")\">death</text>\n";
  for (const auto& [p, k] : d.multiplicities()) {
    double px = x(p.birth);
    double py = p.death.is_infinite() ? rail_y : y(p.death.value());
    s << "  <circle class=\"point\" cx=\"" << px << "\" cy=\"" << py << "\" r=\"4\" fill=\"steelblue\"><title>" << format_rational(p.birth)
      << " " << p.death.to_string() << "</title></circle>\n";
    if (k > 1) s << "  <text class=\"multiplicity\" x=\"" << px + 6 << "\" y=\"" << py - 6 << "\" font-size=\"11\">×" << k << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace pph
