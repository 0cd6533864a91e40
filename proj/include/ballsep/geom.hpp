#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ballsep/errors.hpp"

namespace ballsep {

// Tangency tolerance: a ball whose center is within 1 - kIntersectTol of a
// hyperplane counts as intersected; distance exactly 1 does not.
inline constexpr double kIntersectTol = 1e-12;

// Numeric slack on the pairwise-disjointness requirement (center distance > 2).
inline constexpr double kDisjointSlack = 1e-9;

struct Point {
  std::vector<double> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
};

// Unit vector in R^d. Built through unit_direction() which enforces the norm.
struct Direction {
  std::vector<double> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
};

// Normalizes v and returns it as a Direction; DomainError on a zero vector.
Direction unit_direction(std::vector<double> v);

// The plane {x : normal . x = offset}.
struct Hyperplane {
  Direction normal;
  double offset = 0.0;

  int dim() const { return normal.dim(); }
};

// Dual of a disk center p = (p_x, p_y): the line y = p_x * x - p_y.
struct DualLine {
  double slope = 0.0;
  double intercept = 0.0;
  int id = -1;  // index into the originating ball set

  double value_at(double x) const { return slope * x + intercept; }
};

struct VerticalSegment {
  double x = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

// n centers of pairwise disjoint unit balls, stored row-major.
// Disjointness is validated when instances are loaded from disk, not on
// every mutation (generators guarantee it by construction).
struct BallSet {
  int dim = 0;
  std::vector<double> coords;

  BallSet() = default;
  explicit BallSet(int d) : dim(d) {
    if (d < 1) throw DimensionError("ball set dimension must be >= 1");
  }

  int size() const { return dim > 0 ? static_cast<int>(coords.size()) / dim : 0; }

  std::span<const double> center(int i) const {
    return {coords.data() + static_cast<size_t>(i) * dim,
            static_cast<size_t>(dim)};
  }

  Point point(int i) const {
    auto c = center(i);
    return Point{{c.begin(), c.end()}};
  }

  void add(std::span<const double> c) {
    if (static_cast<int>(c.size()) != dim)
      throw DimensionError("center dimension mismatch");
    coords.insert(coords.end(), c.begin(), c.end());
  }
};

// Duality transform, point to line (p must be 2-dimensional).
DualLine dualize_point(const Point& p, int id = -1);

// Duality transform, line to point: y = m*x + b maps to (m, -b).
Point dualize_line(double slope, double y_intercept);

// normal . p - offset; positive on the normal side.
double signed_distance(const Hyperplane& h, std::span<const double> p);
double signed_distance(const Hyperplane& h, const Point& p);

// |signed_distance| < 1 - kIntersectTol; tangency does not count.
bool ball_intersects_hyperplane(const Hyperplane& h, std::span<const double> center);
bool ball_intersects_hyperplane(const Hyperplane& h, const Point& center);

// The vertical segment at x = m that dual lines of intersected disk centers
// must cross: y in [-b - sqrt(m^2+1), -b + sqrt(m^2+1)].
VerticalSegment dual_segment_for_line(double slope, double intercept);

// True iff the dual line of `center` crosses the segment of `line`.
bool dual_segment_crossing(const DualLine& center_dual, const VerticalSegment& seg);

// Rotates a planar ball set about the origin until all center x-coordinates
// are pairwise distinct. The angle is the first value of the deterministic
// schedule 2^j * 1e-12 rad (angle 0 if already distinct).
std::pair<BallSet, double> rotate_to_general_position(const BallSet& balls);

}  // namespace ballsep
