#pragma once

#include <span>
#include <vector>

#include "ballsep/geom.hpp"

namespace ballsep {

// Hot data-parallel loops, OpenMP-parallel with bit-identical serial
// reference implementations in kernels::serial. Every kernel writes
// elementwise or reduces over integers, so the parallel result is
// bit-for-bit equal to the serial one regardless of thread count.

// Vertical band around a trapezoid's carrier lines: the region between
// U(x) = upper(x) + sqrt(1+x^2) and L(x) = lower(x) - sqrt(1+x^2).
struct TubeBand {
  double upper_slope = 0.0, upper_intercept = 0.0;
  double lower_slope = 0.0, lower_intercept = 0.0;
};

// True iff some x in [x0, x1] has L(x) - tol <= g(x) <= U(x) + tol.
// Closed form: each one-sided violation set is a single interval because
// U - g is strictly convex and g - L is strictly convex.
bool line_in_tube_band(double g_slope, double g_intercept, const TubeBand& band,
                       double x0, double x1, double tol);

struct PairDistance {
  double dist2 = 0.0;
  int a = -1, b = -1;
};

namespace kernels {

// out[i] = centers[i] . dir
void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out);

// out[i] = lines[i].slope * x + lines[i].intercept
void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out);

// flags[i] = line_in_tube_band(lines[i], ...); returns the number set.
int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags);

// Closest center pair by (squared distance, a, b); the lexicographic
// minimum is unique, so the reduction order cannot matter.
PairDistance min_pairwise_distance(const BallSet& balls);

// Serial reference implementations; the public entry points above dispatch
// to these below the per-kernel size cutoffs.
namespace serial {

void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out);
void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out);
int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags);
PairDistance min_pairwise_distance(const BallSet& balls);

}  // namespace serial

// Unconditionally OpenMP-parallel variants, kept callable for the benchmark
// and the equivalence tests.
namespace parallel {

void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out);
void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out);
int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags);
PairDistance min_pairwise_distance(const BallSet& balls);

}  // namespace parallel

}  // namespace kernels

}  // namespace ballsep
