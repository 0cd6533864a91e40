#include "ballsep/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ballsep {

namespace {

// f(x) = s*x + c + sqrt(1+x^2), strictly convex. Appends to `roots` the real
// zeros of f. A true zero has s*x + c = -sqrt(1+x^2) <= -1, which separates
// it from the spurious branch introduced by squaring (where s*x + c >= 1).
void convex_band_roots(double s, double c, double roots[2], int& num_roots) {
  num_roots = 0;
  const double a = s * s - 1.0;
  const double b = 2.0 * s * c;
  const double q = c * c - 1.0;
  double cand[2];
  int num_cand = 0;
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 0.0) cand[num_cand++] = -q / b;
  } else {
    const double disc = b * b - 4.0 * a * q;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double t = -0.5 * (b + std::copysign(sq, b));
      if (t != 0.0) {
        cand[num_cand++] = t / a;
        cand[num_cand++] = q / t;
      } else {
        cand[num_cand++] = 0.0;
      }
    }
  }
  for (int i = 0; i < num_cand; ++i) {
    if (std::isfinite(cand[i]) && s * cand[i] + c < -0.5) roots[num_roots++] = cand[i];
  }
  if (num_roots == 2 && roots[0] > roots[1]) std::swap(roots[0], roots[1]);
}

// Marks the sub-segments of [x0, x1] where f(x) = s*x + c + sqrt(1+x^2)
// drops below -tol as forbidden and returns them as a single interval
// [bad_lo, bad_hi] (convexity). Returns false if nothing is forbidden.
// The boundary sits at f = -tol, so near-misses stay feasible.
bool forbidden_interval(double s, double c, double x0, double x1, double tol,
                        double& bad_lo, double& bad_hi) {
  double roots[2];
  int num_roots;
  convex_band_roots(s, c + tol, roots, num_roots);

  double breaks[4] = {x0, 0, 0, 0};
  int num_breaks = 1;
  for (int i = 0; i < num_roots; ++i)
    if (roots[i] > x0 && roots[i] < x1) breaks[num_breaks++] = roots[i];
  breaks[num_breaks++] = x1;

  bool found = false;
  bad_lo = 0.0;
  bad_hi = 0.0;
  for (int i = 0; i + 1 < num_breaks; ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    const double val = s * mid + c + std::sqrt(1.0 + mid * mid);
    if (val < -tol) {
      if (!found) {
        bad_lo = breaks[i];
        found = true;
      }
      bad_hi = breaks[i + 1];
    }
  }
  return found;
}

}  // namespace

bool line_in_tube_band(double g_slope, double g_intercept, const TubeBand& band,
                       double x0, double x1, double tol) {
  // g above the tube: U(x) - g(x) < -tol forbidden.
  double u_lo, u_hi;
  const bool u_bad = forbidden_interval(band.upper_slope - g_slope,
                                        band.upper_intercept - g_intercept,
                                        x0, x1, tol, u_lo, u_hi);
  // g below the tube: g(x) - L(x) < -tol forbidden.
  double l_lo, l_hi;
  const bool l_bad = forbidden_interval(g_slope - band.lower_slope,
                                        g_intercept - band.lower_intercept,
                                        x0, x1, tol, l_lo, l_hi);

  if (!u_bad && !l_bad) return true;
  if (u_bad && !l_bad) return u_lo > x0 || u_hi < x1;
  if (l_bad && !u_bad) return l_lo > x0 || l_hi < x1;

  // Both forbidden intervals present: some of [x0, x1] must remain.
  if (u_lo > l_lo) {
    std::swap(u_lo, l_lo);
    std::swap(u_hi, l_hi);
  }
  if (u_lo > x0) return true;
  if (l_lo > u_hi) return true;  // gap between the forbidden intervals
  return std::max(u_hi, l_hi) < x1;
}

namespace kernels {

namespace serial {

void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out) {
  const int n = balls.size();
  const int d = balls.dim;
  const double* coords = balls.coords.data();
  const double* v = dir.coords.data();
  for (int i = 0; i < n; ++i) {
    double dot = 0.0;
    for (int j = 0; j < d; ++j) dot += coords[static_cast<size_t>(i) * d + j] * v[j];
    out[static_cast<size_t>(i)] = dot;
  }
}

void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out) {
  const size_t n = lines.size();
  for (size_t i = 0; i < n; ++i) out[i] = lines[i].slope * x + lines[i].intercept;
}

int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags) {
  const size_t n = lines.size();
  int count = 0;
  for (size_t i = 0; i < n; ++i) {
    const bool hit = line_in_tube_band(lines[i].slope, lines[i].intercept, band,
                                       x0, x1, tol);
    flags[i] = hit ? 1 : 0;
    count += hit ? 1 : 0;
  }
  return count;
}

PairDistance min_pairwise_distance(const BallSet& balls) {
  PairDistance best{std::numeric_limits<double>::infinity(), -1, -1};
  const int n = balls.size();
  const int d = balls.dim;
  const double* coords = balls.coords.data();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = coords[static_cast<size_t>(i) * d + c] -
                            coords[static_cast<size_t>(j) * d + c];
        d2 += diff * diff;
      }
      if (d2 < best.dist2) best = PairDistance{d2, i, j};
    }
  }
  return best;
}

}  // namespace serial

namespace {

// Per-kernel thresholds below which the fork/join overhead outweighs the
// loop (see bench/kernel_bench.cpp: the streaming kernels are memory-bound
// and need very large n before a second core pays off, the predicate and
// pairwise kernels are compute-bound and win early). The serial reference
// produces bit-identical output, so dispatching on size is safe.
constexpr int kStreamingCutoff = 1 << 20;
constexpr int kPredicateCutoff = 4096;
constexpr int kPairwiseCutoff = 256;

bool run_serial(int n, int cutoff) {
#ifdef _OPENMP
  return n < cutoff || omp_in_parallel();
#else
  (void)cutoff;
  return n >= 0;
#endif
}

}  // namespace

namespace parallel {

void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out) {
  const int n = balls.size();
  const int d = balls.dim;
  const double* coords = balls.coords.data();
  const double* v = dir.coords.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double dot = 0.0;
    for (int j = 0; j < d; ++j) dot += coords[static_cast<size_t>(i) * d + j] * v[j];
    o[i] = dot;
  }
}

void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out) {
  const int n = static_cast<int>(lines.size());
  const DualLine* l = lines.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) o[i] = l[i].slope * x + l[i].intercept;
}

int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags) {
  const int n = static_cast<int>(lines.size());
  const DualLine* l = lines.data();
  char* f = flags.data();
  int count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (int i = 0; i < n; ++i) {
    const bool hit = line_in_tube_band(l[i].slope, l[i].intercept, band, x0, x1, tol);
    f[i] = hit ? 1 : 0;
    count += hit ? 1 : 0;
  }
  return count;
}

PairDistance min_pairwise_distance(const BallSet& balls) {
  // The lexicographic minimum over (dist2, i, j) is unique, so combining
  // per-thread results in any order gives the same answer.
  const int n = balls.size();
  PairDistance best{std::numeric_limits<double>::infinity(), -1, -1};
  const int d = balls.dim;
  const double* coords = balls.coords.data();
#pragma omp parallel
  {
    PairDistance local{std::numeric_limits<double>::infinity(), -1, -1};
#pragma omp for schedule(dynamic, 64)
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double d2 = 0.0;
        for (int c = 0; c < d; ++c) {
          const double diff = coords[static_cast<size_t>(i) * d + c] -
                              coords[static_cast<size_t>(j) * d + c];
          d2 += diff * diff;
        }
        if (d2 < local.dist2) local = PairDistance{d2, i, j};
      }
    }
#pragma omp critical(ballsep_min_pair)
    {
      if (local.dist2 < best.dist2 ||
          (local.dist2 == best.dist2 &&
           (local.a < best.a || (local.a == best.a && local.b < best.b)))) {
        best = local;
      }
    }
  }
  return best;
}

}  // namespace parallel

void project_points(const BallSet& balls, const Direction& dir,
                    std::span<double> out) {
  if (run_serial(balls.size(), kStreamingCutoff))
    return serial::project_points(balls, dir, out);
  parallel::project_points(balls, dir, out);
}

void eval_lines_at(std::span<const DualLine> lines, double x,
                   std::span<double> out) {
  if (run_serial(static_cast<int>(lines.size()), kStreamingCutoff))
    return serial::eval_lines_at(lines, x, out);
  parallel::eval_lines_at(lines, x, out);
}

int flag_tube_hits(std::span<const DualLine> lines, const TubeBand& band,
                   double x0, double x1, double tol, std::span<char> flags) {
  if (run_serial(static_cast<int>(lines.size()), kPredicateCutoff))
    return serial::flag_tube_hits(lines, band, x0, x1, tol, flags);
  return parallel::flag_tube_hits(lines, band, x0, x1, tol, flags);
}

PairDistance min_pairwise_distance(const BallSet& balls) {
  if (run_serial(balls.size(), kPairwiseCutoff))
    return serial::min_pairwise_distance(balls);
  return parallel::min_pairwise_distance(balls);
}

}  // namespace kernels

}  // namespace ballsep
