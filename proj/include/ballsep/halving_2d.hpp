#pragma once

#include <vector>

#include "ballsep/geom.hpp"

namespace ballsep {

struct PlanarParams {
  double gamma = 0.25;       // core fraction in (0, 1/2)
  double epsilon = 0.25;     // pruning slack in (0, 1/2); only enters the
                             // theoretical width threshold that gets logged
  int m_max = 64;            // subslab count limit
  int min_lines = 24;        // brute-force-finish threshold
  double width_floor = 1e-13;
  bool optimize_finish = false;  // scan 33 finish slopes for the fewest cuts
};

// Vertical strip <left, right> of the dual plane.
struct Slab {
  double left = 0.0;
  double right = 1.0;

  double width() const { return right - left; }
};

// Loop state of the prune-and-search: surviving dual lines, the slab still
// under consideration, and the tracked level among the survivors.
struct SlabState {
  std::vector<DualLine> lines;
  Slab slab;
  int lambda = 1;           // 1-based level index into the survivors
  int discarded_below = 0;  // lambda + discarded_below == original median index
  int iteration = 0;
};

// Region between the carrier lines through the (lambda +- floor(n/8))-level
// corner points of a subslab; contains the lambda-level there.
struct Trapezoid {
  double x_left = 0.0, x_right = 0.0;
  double y_upper_left = 0.0, y_upper_right = 0.0;
  double y_lower_left = 0.0, y_lower_right = 0.0;
  double upper_slope = 0.0, upper_intercept = 0.0;  // carrier a
  double lower_slope = 0.0, lower_intercept = 0.0;  // carrier b
};

struct IterationTrace {
  int iteration = 0;
  Slab slab;                       // before this iteration
  std::vector<double> boundaries;  // interior subslab boundaries
  int m = 0;                       // realized subslab count
  std::vector<int> tube_counts;    // n_i per subslab
  int chosen = -1;
  Trapezoid chosen_trapezoid;
  int survivors = 0;
  int lambda = 0;                  // after the update
  int discarded_below_total = 0;
  double new_width = 0.0;
  double theoretical_width_floor = 0.0;  // c*log(n)/n, c = (8m/(gamma*eps))^2
};

struct HalvingResult {
  double slope = 0.0;
  double intercept = 0.0;
  Hyperplane plane;                // same line as {slope, intercept}
  std::vector<int> intersected_ids;
  int intersected = 0;
  int left_closed = 0;
  int right_closed = 0;
  int iterations = 0;
  int survivors_at_finish = 0;
  double rotation_angle = 0.0;
  int removed_id = -1;             // center set aside when n was even
};

// The lam-th smallest line value at x, ties broken by line id. O(n).
double level_value_at(const std::vector<DualLine>& lines, double x, int lam);

// Line ids sorted by (value at x, id).
std::vector<int> order_at(const std::vector<DualLine>& lines, double x);

// Arrangement vertices with x strictly between a and b: crossing pairs swap
// their order exactly once.
long long vertices_in(const std::vector<DualLine>& lines, double a, double b);

struct SubdivisionResult {
  std::vector<double> boundaries;  // interior boundaries, sorted
  long long total_vertices = 0;
  int max_bisection_steps = 0;
};

// Splits the slab into m <= m_max subslabs holding at most about
// ceil(V/m_max) vertices each; boundaries located by bisection on the
// cumulative inversion count. Deterministic.
SubdivisionResult subdivide_slab_ex(const std::vector<DualLine>& lines,
                                    const Slab& slab, int m_max,
                                    double width_floor);
std::vector<double> subdivide_slab(const std::vector<DualLine>& lines,
                                   const Slab& slab, int m_max);

Trapezoid build_trapezoid(const std::vector<DualLine>& lines, const Slab& subslab,
                          int lam);

// True iff g enters the trapezoid's 1-tube somewhere in [x0, x1]: between
// U(x) = a(x) + sqrt(1+x^2) and L(x) = b(x) - sqrt(1+x^2), inclusive with
// tolerance 1e-9 (near misses count as inside, erring toward keeping).
bool line_intersects_tube_in_range(const DualLine& g, const Trapezoid& trap,
                                   double x0, double x1);

// One prune-and-search step: subdivide, pick the widest-enough subslab whose
// tube the fewest lines enter, shrink to its core, discard the rest, adjust
// the level.
SlabState iterate_once(const SlabState& state, const PlanarParams& params,
                       IterationTrace* trace = nullptr);

// Full planar algorithm: exact halving line for odd n that intersects few
// disks. For even n one center is set aside during the search and restored
// for the final counts.
HalvingResult halving_line(const BallSet& balls, const PlanarParams& params = {},
                           std::vector<IterationTrace>* trace = nullptr);

}  // namespace ballsep
