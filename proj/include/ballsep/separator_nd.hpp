#pragma once

#include <vector>

#include "ballsep/geom.hpp"

namespace ballsep {

// Parameters of the direction-search separator. Construction enforces
// d*n <= k*b and t > 2, so a populated SeparatorParams certifies both.
struct SeparatorParams {
  int d = 0;
  int n = 0;
  int b = 0;          // approximation budget: the plane is an (n-b)/2-separator
  int k = 0;          // number of directions requested
  double t = 0.0;     // spread threshold
  double unit_ball_volume = 0.0;

  int guaranteed_min_side() const { return (n - b + 1) / 2; }
  double guaranteed_max_cut() const { return 2.0 * b / (t - 2.0); }
};

// Directions lifted from the modular point set; k' >= k of them, k' prime.
struct DirectionSet {
  std::vector<Direction> directions;
  int source_prime = 0;
};

struct SpreadResult {
  double spread = 0.0;
  double lo_value = 0.0;  // projection of rank ceil((n-b)/2)
  double hi_value = 0.0;  // projection of rank ceil((n+b)/2)
  std::vector<int> member_ids;  // centers projecting into [lo_value, hi_value]
};

struct SeparatorResult {
  Hyperplane plane;
  int direction_index = -1;
  double spread = 0.0;
  int guaranteed_min_side = 0;
  double guaranteed_max_cut = 0.0;
  int left_closed = 0;
  int right_closed = 0;
  int intersected = 0;
  std::vector<int> intersected_ids;
  int directions_scanned = 0;
  // Set when no direction reached the spread threshold t; the plane is still
  // a valid (n-b)/2-separator but carries no intersection guarantee.
  bool fallback = false;
};

// Least prime >= max(k, 2); trial division (k stays O(log n) here).
int smallest_prime_at_least(int k);

// p_i = (1/k)(i, i^2 mod k, ..., i^m mod k) for i = 0..k-1; k must be prime.
std::vector<Point> heilbronn_points(int k, int m);

// f(x) = (x_1 - 1/2, ..., x_{d-1} - 1/2, 1/2) normalized; coordinates must
// lie in [0, 1].
Direction lift_to_sphere(const Point& p);

// Heilbronn points of the least prime >= k in [0,1]^{d-1}, lifted to S^{d-1}.
DirectionSet build_directions(int k, int d);

// Validates conditions (1) d*n <= k*b and (2) t > 2 and fills in t and V_d.
SeparatorParams check_conditions(int d, int n, int b, int k);

// Fills t and V_d without enforcing the conditions. Running the search with
// t <= 2 always yields a fallback result (no intersection guarantee).
SeparatorParams params_unchecked(int d, int n, int b, int k);

// The (b, k) choices behind params_from_alpha / params_from_f.
std::pair<int, int> alpha_choice(int d, int n, double alpha);
std::pair<int, int> f_choice(int d, int n, double f_value);

// b = floor((1-2a)n), k = ceil(d/(1-2a)); the separator keeps >= a*n centers
// per side.
SeparatorParams params_from_alpha(int d, int n, double alpha);

// b = ceil(n/f), k = ceil(d*f); each side keeps >= (n/2)(1 - 1/f) centers.
SeparatorParams params_from_f(int d, int n, double f_value);

// Projects all centers onto v; spread = projection gap between ranks
// ceil((n-b)/2) and ceil((n+b)/2).
SpreadResult spread(const BallSet& balls, const Direction& v, int b);

// Point p in (lo+1, hi-1) with at most 2b'/(w-2) values within distance one,
// w = hi - lo > 2, b' = values.size(). Pigeonhole over ceil((w-2)/2) disjoint
// length-2 subintervals, found by ratio-guided binary search.
double select_cut_point(const std::vector<double>& values, double lo, double hi);

// The full direction-search algorithm: scan directions in index order, stop
// at the first with spread >= t, place the cut with select_cut_point. If no
// direction qualifies, the best-spread direction is used and the result is
// flagged `fallback`.
SeparatorResult find_separator_nd(const BallSet& balls, const SeparatorParams& params);

}  // namespace ballsep
