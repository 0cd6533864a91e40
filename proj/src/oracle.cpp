#include "ballsep/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace ballsep {
namespace oracle {

SideCounts count_sides(const BallSet& balls, const Hyperplane& plane) {
  SideCounts out;
  for (int i = 0; i < balls.size(); ++i) {
    const double dist = signed_distance(plane, balls.center(i));
    if (dist < -1e-12) {
      ++out.left;
    } else if (dist > 1e-12) {
      ++out.right;
    } else {
      ++out.on;
    }
  }
  return out;
}

IntersectedCount count_intersected(const BallSet& balls, const Hyperplane& plane) {
  IntersectedCount out;
  for (int i = 0; i < balls.size(); ++i) {
    if (ball_intersects_hyperplane(plane, balls.center(i))) {
      ++out.count;
      out.ids.push_back(i);
    }
  }
  return out;
}

bool verify_m_separator(const BallSet& balls, const Hyperplane& plane, int m) {
  const SideCounts sides = count_sides(balls, plane);
  return sides.left_closed() >= m && sides.right_closed() >= m;
}

namespace {

// Median-projection halving line orthogonal to angle theta; counts the disks
// it cuts. Every such line is an exact halving line: the cut passes through
// the median projection, so both closed halfplanes hold >= ceil(n/2) centers.
void try_angle(const BallSet& balls, double theta, BestHalvingLine& best,
               std::vector<std::pair<double, int>>& proj) {
  const int n = balls.size();
  const double vx = std::cos(theta), vy = std::sin(theta);
  proj.clear();
  for (int i = 0; i < n; ++i) {
    auto c = balls.center(i);
    proj.emplace_back(vx * c[0] + vy * c[1], i);
  }
  std::sort(proj.begin(), proj.end());
  const double cut = proj[static_cast<size_t>((n + 1) / 2 - 1)].first;

  int intersected = 0;
  for (const auto& [v, id] : proj)
    if (std::abs(v - cut) < 1.0 - kIntersectTol) ++intersected;

  if (intersected < best.min_intersections) {
    best.min_intersections = intersected;
    if (std::abs(vy) < 1e-15) {
      best.vertical = true;
      best.slope = 0.0;
      best.intercept = cut / vx;
    } else {
      best.vertical = false;
      best.slope = -vx / vy;
      best.intercept = cut / vy;
    }
  }
}

}  // namespace

BestHalvingLine best_halving_line_2d(const BallSet& balls) {
  const int n = balls.size();
  if (balls.dim != 2) throw DimensionError("best_halving_line_2d requires dim = 2");
  if (n > 64) throw DomainError("best_halving_line_2d limited to n <= 64");
  if (n % 2 == 0) throw DomainError("best_halving_line_2d requires odd n");

  BestHalvingLine best;
  best.min_intersections = n + 1;
  std::vector<std::pair<double, int>> proj;
  proj.reserve(static_cast<size_t>(n));

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto a = balls.center(i), b = balls.center(j);
      const double diff_angle = std::atan2(b[1] - a[1], b[0] - a[0]);
      const double normal_angle = diff_angle + std::acos(-1.0) / 2.0;
      try_angle(balls, normal_angle - 1e-6, best, proj);
      try_angle(balls, normal_angle + 1e-6, best, proj);
    }
  }
  for (int k = 0; k < 256; ++k)
    try_angle(balls, std::acos(-1.0) * k / 256.0, best, proj);
  return best;
}

long long brute_vertices_in_slab(const std::vector<DualLine>& lines, double a, double b) {
  const int n = static_cast<int>(lines.size());
  if (n > 500) throw DomainError("brute_vertices_in_slab limited to n <= 500");
  if (!(a < b)) throw DomainError("need a < b");
  long long count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dm = lines[static_cast<size_t>(i)].slope - lines[static_cast<size_t>(j)].slope;
      if (dm == 0.0) continue;
      const double x = (lines[static_cast<size_t>(j)].intercept -
                        lines[static_cast<size_t>(i)].intercept) / dm;
      if (x > a && x < b) ++count;
    }
  }
  return count;
}

}  // namespace oracle
}  // namespace ballsep
