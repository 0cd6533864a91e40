#include "ballsep/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace ballsep {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

}  // namespace

void SvgDoc::bound(double x, double y, double pad) {
  if (!seen_) {
    min_x_ = x - pad;
    max_x_ = x + pad;
    min_y_ = y - pad;
    max_y_ = y + pad;
    seen_ = true;
    return;
  }
  min_x_ = std::min(min_x_, x - pad);
  max_x_ = std::max(max_x_, x + pad);
  min_y_ = std::min(min_y_, y - pad);
  max_y_ = std::max(max_y_, y + pad);
}

void SvgDoc::circle(double cx, double cy, double r, const std::string& cls) {
  bound(cx, cy, r);
  body_ << "  <circle class=\"" << cls << "\" cx=\"" << fmt(cx) << "\" cy=\""
        << fmt(-cy) << "\" r=\"" << fmt(r) << "\"/>\n";
}

void SvgDoc::line(double x1, double y1, double x2, double y2, const std::string& cls) {
  bound(x1, y1);
  bound(x2, y2);
  body_ << "  <line class=\"" << cls << "\" x1=\"" << fmt(x1) << "\" y1=\""
        << fmt(-y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(-y2) << "\"/>\n";
}

void SvgDoc::rect(double x0, double y0, double x1, double y1, const std::string& cls) {
  bound(x0, y0);
  bound(x1, y1);
  body_ << "  <rect class=\"" << cls << "\" x=\"" << fmt(std::min(x0, x1))
        << "\" y=\"" << fmt(std::min(-y0, -y1)) << "\" width=\""
        << fmt(std::abs(x1 - x0)) << "\" height=\"" << fmt(std::abs(y1 - y0))
        << "\"/>\n";
}

void SvgDoc::polygon(const std::vector<std::pair<double, double>>& pts,
                     const std::string& cls) {
  body_ << "  <polygon class=\"" << cls << "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    bound(pts[i].first, pts[i].second);
    body_ << (i ? " " : "") << fmt(pts[i].first) << ',' << fmt(-pts[i].second);
  }
  body_ << "\"/>\n";
}

void SvgDoc::polyline(const std::vector<std::pair<double, double>>& pts,
                      const std::string& cls) {
  body_ << "  <polyline class=\"" << cls << "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    bound(pts[i].first, pts[i].second);
    body_ << (i ? " " : "") << fmt(pts[i].first) << ',' << fmt(-pts[i].second);
  }
  body_ << "\"/>\n";
}

void SvgDoc::text(double x, double y, const std::string& content) {
  bound(x, y);
  body_ << "  <text class=\"label\" x=\"" << fmt(x) << "\" y=\"" << fmt(-y)
        << "\">" << content << "</text>\n";
}

void SvgDoc::write(std::ostream& out) const {
  double x0 = seen_ ? min_x_ : 0.0, x1 = seen_ ? max_x_ : 1.0;
  double y0 = seen_ ? -max_y_ : 0.0, y1 = seen_ ? -min_y_ : 1.0;
  const double mx = std::max((x1 - x0) * 0.05, 1e-9);
  const double my = std::max((y1 - y0) * 0.05, 1e-9);
  x0 -= mx;
  x1 += mx;
  y0 -= my;
  y1 += my;
  const double label_size = std::max(x1 - x0, y1 - y0) / 40.0;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << fmt(x0) << ' ' << fmt(y0) << ' ' << fmt(x1 - x0) << ' ' << fmt(y1 - y0)
      << "\">\n"
      << "  <style>\n"
      << "    .disk { fill: none; stroke: #555; stroke-width: 0.06; }\n"
      << "    .intersected { fill: #f2b8b5; stroke: #a33; stroke-width: 0.06; }\n"
      << "    .separator { stroke: #0b62c4; stroke-width: 0.1; }\n"
      << "    .slab { fill: #eef4fb; stroke: #9bb8d8; stroke-width: 0.002; }\n"
      << "    .boundary { stroke: #b0b0b0; stroke-width: 0.0015; }\n"
      << "    .trapezoid { fill: #d98a8a; fill-opacity: 0.6; stroke: #a33; stroke-width: 0.002; }\n"
      << "    .tube { fill: none; stroke: #3a9; stroke-width: 0.003; }\n"
      << "    .dualline { stroke: #889; stroke-width: 0.001; }\n"
      << "    .label { font-family: monospace; font-size: " << fmt(label_size)
      << "px; fill: #222; }\n"
      << "  </style>\n"
      << body_.str() << "</svg>\n";
}

}  // namespace ballsep
