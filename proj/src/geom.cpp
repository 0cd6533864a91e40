#include "ballsep/geom.hpp"

#include <algorithm>
#include <cmath>

namespace ballsep {

Direction unit_direction(std::vector<double> v) {
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw DomainError("cannot normalize zero or non-finite vector");
  for (double& c : v) c /= norm;
  return Direction{std::move(v)};
}

DualLine dualize_point(const Point& p, int id) {
  if (p.dim() != 2)
    throw DimensionError("dualize_point requires a 2-dimensional point");
  return DualLine{p[0], -p[1], id};
}

Point dualize_line(double slope, double y_intercept) {
  return Point{{slope, -y_intercept}};
}

double signed_distance(const Hyperplane& h, std::span<const double> p) {
  if (h.dim() != static_cast<int>(p.size()))
    throw DimensionError("hyperplane/point dimension mismatch");
  double dot = 0.0;
  for (int i = 0; i < h.dim(); ++i) dot += h.normal[i] * p[i];
  return dot - h.offset;
}

double signed_distance(const Hyperplane& h, const Point& p) {
  return signed_distance(h, std::span<const double>(p.coords));
}

bool ball_intersects_hyperplane(const Hyperplane& h, std::span<const double> center) {
  return std::abs(signed_distance(h, center)) < 1.0 - kIntersectTol;
}

bool ball_intersects_hyperplane(const Hyperplane& h, const Point& center) {
  return ball_intersects_hyperplane(h, std::span<const double>(center.coords));
}

VerticalSegment dual_segment_for_line(double slope, double intercept) {
  const double half = std::sqrt(slope * slope + 1.0);
  return VerticalSegment{slope, -intercept - half, -intercept + half};
}

bool dual_segment_crossing(const DualLine& center_dual, const VerticalSegment& seg) {
  const double y = center_dual.value_at(seg.x);
  return y > seg.y_lo && y < seg.y_hi;
}

namespace {

bool x_coords_distinct(const BallSet& balls, double cos_t, double sin_t) {
  const int n = balls.size();
  std::vector<double> xs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto c = balls.center(i);
    xs[static_cast<size_t>(i)] = c[0] * cos_t - c[1] * sin_t;
  }
  std::sort(xs.begin(), xs.end());
  for (int i = 0; i + 1 < n; ++i)
    if (xs[static_cast<size_t>(i)] == xs[static_cast<size_t>(i) + 1]) return false;
  return true;
}

}  // namespace

std::pair<BallSet, double> rotate_to_general_position(const BallSet& balls) {
  if (balls.dim != 2)
    throw DimensionError("rotate_to_general_position requires dim = 2");
  if (x_coords_distinct(balls, 1.0, 0.0)) return {balls, 0.0};

  for (int j = 0; j <= 60; ++j) {
    const double angle = std::ldexp(1e-12, j);
    const double c = std::cos(angle), s = std::sin(angle);
    if (!x_coords_distinct(balls, c, s)) continue;
    BallSet out(2);
    out.coords.reserve(balls.coords.size());
    for (int i = 0; i < balls.size(); ++i) {
      auto p = balls.center(i);
      const double rx = p[0] * c - p[1] * s;
      const double ry = p[0] * s + p[1] * c;
      out.coords.push_back(rx);
      out.coords.push_back(ry);
    }
    return {std::move(out), angle};
  }
  throw GeneralPositionError("no rotation in the schedule separates all x-coordinates");
}

}  // namespace ballsep
