#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ballsep {

// Minimal SVG 1.1 document builder. World coordinates, y up; the viewBox is
// fitted to everything added, with a 5% margin.
class SvgDoc {
 public:
  void circle(double cx, double cy, double r, const std::string& cls);
  void line(double x1, double y1, double x2, double y2, const std::string& cls);
  void rect(double x0, double y0, double x1, double y1, const std::string& cls);
  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& cls);
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& cls);
  void text(double x, double y, const std::string& content);

  void write(std::ostream& out) const;

 private:
  void bound(double x, double y, double pad = 0.0);

  std::ostringstream body_;
  double min_x_ = 0.0, min_y_ = 0.0, max_x_ = 0.0, max_y_ = 0.0;
  bool seen_ = false;
};

}  // namespace ballsep
