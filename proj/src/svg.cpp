#include "votepos/svg.hpp"

#include <iomanip>
#include <sstream>

namespace votepos {

namespace {

constexpr double kLeft = 40, kRight = 600, kRowHeight = 80, kTop = 20;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

}  // namespace

std::string render_svg(const std::vector<std::pair<std::string, Profile>>& rows) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  const double height = kTop * 2 + kRowHeight * static_cast<double>(rows.size());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = kTop + kRowHeight * (static_cast<double>(r) + 0.5);
    os << "  <text x=\"" << kLeft << "\" y=\"" << y - 28 << "\">" << escape(rows[r].first) << "</text>\n";
    os << "  <line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kRight << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    for (double end : {kLeft, kRight})
      os << "  <line x1=\"" << end << "\" y1=\"" << y - 5 << "\" x2=\"" << end << "\" y2=\"" << y + 5
         << "\" stroke=\"black\"/>\n";
    for (const auto& c : rows[r].second.clusters()) {
      const double x = kLeft + (kRight - kLeft) * c.position.to_double();
      os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << 3.0 * c.count
         << "\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
      os << "  <text x=\"" << x << "\" y=\"" << y + 3.0 * c.count + 14 << "\" text-anchor=\"middle\">"
         << c.position.str() << " (" << c.count << ")</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace votepos
