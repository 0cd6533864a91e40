#pragma once

#include <vector>

#include "ballsep/geom.hpp"

namespace ballsep {
namespace oracle {

// Brute-force verifiers for the algorithmic claims. Deliberately direct and
// serial; they share only the geom primitives with the fast paths, never the
// selection or pruning code they are checking.

struct SideCounts {
  int left = 0;   // signed_distance < -1e-12
  int right = 0;  // signed_distance > +1e-12
  int on = 0;

  int left_closed() const { return left + on; }
  int right_closed() const { return right + on; }
};

SideCounts count_sides(const BallSet& balls, const Hyperplane& plane);

struct IntersectedCount {
  int count = 0;
  std::vector<int> ids;
};

IntersectedCount count_intersected(const BallSet& balls, const Hyperplane& plane);

// Both closed halfspaces contain at least m centers.
bool verify_m_separator(const BallSet& balls, const Hyperplane& plane, int m);

struct BestHalvingLine {
  double slope = 0.0;
  double intercept = 0.0;
  bool vertical = false;  // vertical candidate x = intercept
  int min_intersections = 0;
};

// Exhaustive search over candidate directions (normals of center-difference
// vectors, each nudged by +-1e-6 rad, plus 256 evenly spaced angles) for the
// halving line cutting the fewest disks. n odd and <= 64.
BestHalvingLine best_halving_line_2d(const BallSet& balls);

// Pairwise crossings with x strictly in (a, b), by direct solve. n <= 500.
long long brute_vertices_in_slab(const std::vector<DualLine>& lines, double a, double b);

}  // namespace oracle
}  // namespace ballsep
