#include "ballsep/separator_nd.hpp"

#include <algorithm>
#include <cmath>

#include "ballsep/kernels.hpp"
#include "ballsep/oracle.hpp"
#include "ballsep/select.hpp"

namespace ballsep {

int smallest_prime_at_least(int k) {
  int c = std::max(k, 2);
  for (;; ++c) {
    bool prime = c >= 2;
    for (int f = 2; static_cast<long long>(f) * f <= c; ++f) {
      if (c % f == 0) {
        prime = false;
        break;
      }
    }
    if (prime) return c;
  }
}

std::vector<Point> heilbronn_points(int k, int m) {
  if (k < 2 || smallest_prime_at_least(k) != k)
    throw PrimalityError(std::to_string(k) + " is not prime");
  if (m < 1) throw DimensionError("cube dimension must be >= 1");
  std::vector<Point> points;
  points.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    Point p;
    p.coords.resize(static_cast<size_t>(m));
    long long pow = 1;  // i^j mod k, reduced at every step
    for (int j = 0; j < m; ++j) {
      pow = (pow * i) % k;
      p.coords[static_cast<size_t>(j)] = static_cast<double>(pow) / k;
    }
    points.push_back(std::move(p));
  }
  return points;
}

Direction lift_to_sphere(const Point& p) {
  std::vector<double> v(p.coords.size() + 1);
  for (size_t i = 0; i < p.coords.size(); ++i) {
    if (!(p.coords[i] >= 0.0 && p.coords[i] <= 1.0))
      throw DomainError("lift_to_sphere coordinate outside [0, 1]");
    v[i] = p.coords[i] - 0.5;
  }
  v.back() = 0.5;
  return unit_direction(std::move(v));
}

DirectionSet build_directions(int k, int d) {
  if (d < 2) throw DimensionError("direction construction requires d >= 2");
  const int prime = smallest_prime_at_least(k);
  DirectionSet out;
  out.source_prime = prime;
  for (const Point& p : heilbronn_points(prime, d - 1))
    out.directions.push_back(lift_to_sphere(p));
  return out;
}

SeparatorParams params_unchecked(int d, int n, int b, int k) {
  if (d < 2) throw DimensionError("separator requires d >= 2");
  if (b < 1 || b > n) throw DomainError("need 1 <= b <= n");
  if (k < 1) throw DomainError("need k >= 1");

  const double pi = std::acos(-1.0);
  SeparatorParams params;
  params.d = d;
  params.n = n;
  params.b = b;
  params.k = k;
  params.unit_ball_volume = std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  params.t = std::pow(params.unit_ball_volume / (2.0 * std::pow(d, (d - 2) / 2.0)),
                      1.0 / d) *
             std::pow(n, 1.0 / d) / std::pow(k, 2.0 - 1.0 / d);
  return params;
}

SeparatorParams check_conditions(int d, int n, int b, int k) {
  const SeparatorParams params = params_unchecked(d, n, b, k);
  const long long lhs = static_cast<long long>(d) * n;
  const long long rhs = static_cast<long long>(k) * b;
  if (lhs > rhs)
    throw Condition1Violated(static_cast<double>(lhs), static_cast<double>(rhs));
  if (!(params.t > 2.0)) throw Condition2Violated(params.t);
  return params;
}

std::pair<int, int> alpha_choice(int d, int n, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError("alpha must lie in (0, 1/2)");
  const int b = static_cast<int>(std::floor((1.0 - 2.0 * alpha) * n));
  const int k = static_cast<int>(std::ceil(d / (1.0 - 2.0 * alpha)));
  return {b, k};
}

std::pair<int, int> f_choice(int d, int n, double f_value) {
  if (!(f_value >= 1.0)) throw DomainError("f must be >= 1");
  const int b = static_cast<int>(std::ceil(n / f_value));
  const int k = static_cast<int>(std::ceil(d * f_value));
  return {b, k};
}

SeparatorParams params_from_alpha(int d, int n, double alpha) {
  const auto [b, k] = alpha_choice(d, n, alpha);
  return check_conditions(d, n, b, k);
}

SeparatorParams params_from_f(int d, int n, double f_value) {
  const auto [b, k] = f_choice(d, n, f_value);
  return check_conditions(d, n, b, k);
}

SpreadResult spread(const BallSet& balls, const Direction& v, int b) {
  const int n = balls.size();
  if (v.dim() != balls.dim) throw DimensionError("direction/ball set dimension mismatch");
  if (b > n) throw DomainError("budget b exceeds n");

  std::vector<double> proj(static_cast<size_t>(n));
  kernels::project_points(balls, v, proj);

  const int lo_rank = std::max(1, (n - b + 1) / 2);
  const int hi_rank = std::min(n, (n + b + 1) / 2);
  SpreadResult out;
  out.lo_value = rank_select(proj, lo_rank).value;
  out.hi_value = rank_select(proj, hi_rank).value;
  out.spread = out.hi_value - out.lo_value;
  for (int i = 0; i < n; ++i) {
    const double p = proj[static_cast<size_t>(i)];
    if (p >= out.lo_value && p <= out.hi_value) out.member_ids.push_back(i);
  }
  return out;
}

namespace {

struct CutInterval {
  double mid;  // the interval is [mid - 1, mid + 1]
};

// q = ceil((w-2)/2) disjoint closed length-2 subintervals of (lo, hi) with
// the slack w - 2q spread evenly into q+1 gaps; every midpoint lies strictly
// inside (lo+1, hi-1).
std::vector<CutInterval> layout_intervals(double lo, double hi) {
  const double w = hi - lo;
  const int q = static_cast<int>(std::ceil((w - 2.0) / 2.0));
  const double gap = (w - 2.0 * q) / (q + 1);
  std::vector<CutInterval> out(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i)
    out[static_cast<size_t>(i)].mid = lo + gap * (i + 1) + 2.0 * i + 1.0;
  return out;
}

}  // namespace

double select_cut_point(const std::vector<double>& values, double lo, double hi) {
  const double w = hi - lo;
  if (!(w > 2.0))
    throw WidthError("interval width " + std::to_string(w) + " <= 2");
  for (double v : values)
    if (!(v >= lo && v <= hi)) throw DomainError("value outside [lo, hi]");

  const std::vector<CutInterval> intervals = layout_intervals(lo, hi);
  const double bound = 2.0 * static_cast<double>(values.size()) / (w - 2.0);

  std::vector<double> pts = values;
  int first = 0, last = static_cast<int>(intervals.size()) - 1;
  for (;;) {
    if (static_cast<double>(pts.size()) <= bound) return intervals[static_cast<size_t>(first)].mid;

    const int mid = first + (last - first) / 2;
    const double m = intervals[static_cast<size_t>(mid)].mid;
    std::vector<double> left_pts, right_pts;
    int inside = 0;
    for (double v : pts) {
      if (std::abs(v - m) <= 1.0) {
        ++inside;
      } else if (v < m) {
        left_pts.push_back(v);
      } else {
        right_pts.push_back(v);
      }
    }
    if (static_cast<double>(inside) <= bound) return m;

    // Recurse into the side with the smaller points-to-intervals ratio. The
    // ratio invariant (points/intervals < 2b'/(w-2)) makes a full interval
    // with an empty range unreachable.
    const int left_count = mid - first;
    const int right_count = last - mid;
    if (left_count == 0 && right_count == 0)
      throw std::logic_error("cut-point search exhausted its intervals");
    bool go_left;
    if (left_count == 0) {
      go_left = false;
    } else if (right_count == 0) {
      go_left = true;
    } else {
      const double lr = static_cast<double>(left_pts.size()) / left_count;
      const double rr = static_cast<double>(right_pts.size()) / right_count;
      go_left = lr <= rr;
    }
    if (go_left) {
      last = mid - 1;
      pts = std::move(left_pts);
    } else {
      first = mid + 1;
      pts = std::move(right_pts);
    }
  }
}

SeparatorResult find_separator_nd(const BallSet& balls, const SeparatorParams& params) {
  const int n = balls.size();
  if (balls.dim != params.d || n != params.n)
    throw DimensionError("parameters do not match the ball set");

  const DirectionSet dirs = build_directions(params.k, params.d);
  const int total = static_cast<int>(dirs.directions.size());

  // A threshold t <= 2 certifies nothing (the cut bound 2b/(t-2) is void),
  // so such parameters always take the fallback path.
  const bool threshold_meaningful = params.t > 2.0;

  int chosen = -1;
  int best_index = 0;
  double best_spread = -1.0;
  SpreadResult sp;
  int scanned = 0;
  for (int i = 0; i < total; ++i) {
    SpreadResult cur = spread(balls, dirs.directions[static_cast<size_t>(i)], params.b);
    ++scanned;
    if (cur.spread > best_spread) {
      best_spread = cur.spread;
      best_index = i;
    }
    if (threshold_meaningful && cur.spread >= params.t) {
      chosen = i;
      sp = std::move(cur);
      break;
    }
  }

  SeparatorResult result;
  result.directions_scanned = scanned;
  if (chosen < 0) {
    // No direction reached t (possible only through numeric slack, or when
    // the caller bypassed the conditions); fall back to the widest spread.
    result.fallback = true;
    chosen = best_index;
    sp = spread(balls, dirs.directions[static_cast<size_t>(chosen)], params.b);
  }

  // Cut on the projections strictly inside the window; boundary members sit
  // at distance > 1 from any admissible cut and cannot be intersected.
  std::vector<double> proj(static_cast<size_t>(n));
  kernels::project_points(balls, dirs.directions[static_cast<size_t>(chosen)], proj);
  std::vector<double> window;
  window.reserve(sp.member_ids.size());
  for (int id : sp.member_ids) {
    const double v = proj[static_cast<size_t>(id)];
    if (v > sp.lo_value && v < sp.hi_value) window.push_back(v);
  }
  double cut;
  if (sp.spread > 2.0) {
    cut = select_cut_point(window, sp.lo_value, sp.hi_value);
  } else {
    result.fallback = true;
    cut = 0.5 * (sp.lo_value + sp.hi_value);
  }

  result.plane = Hyperplane{dirs.directions[static_cast<size_t>(chosen)], cut};
  result.direction_index = chosen;
  result.spread = sp.spread;
  result.guaranteed_min_side = params.guaranteed_min_side();
  result.guaranteed_max_cut = result.fallback ? 0.0 : params.guaranteed_max_cut();

  const oracle::SideCounts sides = oracle::count_sides(balls, result.plane);
  result.left_closed = sides.left_closed();
  result.right_closed = sides.right_closed();
  oracle::IntersectedCount cut_count = oracle::count_intersected(balls, result.plane);
  result.intersected = cut_count.count;
  result.intersected_ids = std::move(cut_count.ids);
  return result;
}

}  // namespace ballsep
