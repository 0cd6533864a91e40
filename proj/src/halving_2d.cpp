#include "ballsep/halving_2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ballsep/kernels.hpp"
#include "ballsep/oracle.hpp"
#include "ballsep/select.hpp"

namespace ballsep {

namespace {

// Positions 0..n-1 sorted by (value at x, line id).
void sorted_positions(const std::vector<DualLine>& lines, double x,
                      std::vector<double>& vals, std::vector<int>& perm) {
  const int n = static_cast<int>(lines.size());
  vals.resize(static_cast<size_t>(n));
  kernels::eval_lines_at(lines, x, vals);
  perm.resize(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const double va = vals[static_cast<size_t>(a)], vb = vals[static_cast<size_t>(b)];
    return va < vb || (va == vb && lines[static_cast<size_t>(a)].id <
                                       lines[static_cast<size_t>(b)].id);
  });
}

struct CountScratch {
  std::vector<double> vals;
  std::vector<int> perm, seq, tmp;
};

// Inversions between the order at the left wall (encoded in rank_at_left)
// and the order at x = arrangement vertices passed while sweeping to x.
long long vertices_upto(const std::vector<DualLine>& lines,
                        const std::vector<int>& rank_at_left, double x,
                        CountScratch& s) {
  sorted_positions(lines, x, s.vals, s.perm);
  s.seq.resize(s.perm.size());
  for (size_t r = 0; r < s.perm.size(); ++r)
    s.seq[r] = rank_at_left[static_cast<size_t>(s.perm[r])];
  return count_inversions_labeled(s.seq, s.tmp);
}

TubeBand band_of(const Trapezoid& t) {
  return TubeBand{t.upper_slope, t.upper_intercept, t.lower_slope, t.lower_intercept};
}

constexpr double kTubeTol = 1e-9;

}  // namespace

double level_value_at(const std::vector<DualLine>& lines, double x, int lam) {
  const int n = static_cast<int>(lines.size());
  if (lam < 1 || lam > n)
    throw RankError("level " + std::to_string(lam) + " out of range [1, " +
                    std::to_string(n) + "]");
  std::vector<Ranked> items(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    items[static_cast<size_t>(i)] =
        Ranked{lines[static_cast<size_t>(i)].value_at(x), lines[static_cast<size_t>(i)].id};
  return rank_select(std::move(items), lam).value;
}

std::vector<int> order_at(const std::vector<DualLine>& lines, double x) {
  std::vector<double> vals;
  std::vector<int> perm;
  sorted_positions(lines, x, vals, perm);
  std::vector<int> ids(perm.size());
  for (size_t r = 0; r < perm.size(); ++r)
    ids[r] = lines[static_cast<size_t>(perm[r])].id;
  return ids;
}

long long vertices_in(const std::vector<DualLine>& lines, double a, double b) {
  if (!(a < b)) throw DomainError("need a < b");
  return count_inversions(order_at(lines, a), order_at(lines, b));
}

SubdivisionResult subdivide_slab_ex(const std::vector<DualLine>& lines,
                                    const Slab& slab, int m_max,
                                    double width_floor) {
  const int n = static_cast<int>(lines.size());
  if (n < 2) throw DegenerateError("subdivision needs at least 2 lines");
  if (m_max < 2) throw DomainError("m_max must be >= 2");

  std::vector<double> vals;
  std::vector<int> perm_left;
  sorted_positions(lines, slab.left, vals, perm_left);
  std::vector<int> rank_at_left(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r)
    rank_at_left[static_cast<size_t>(perm_left[static_cast<size_t>(r)])] = r;

  SubdivisionResult out;
  {
    CountScratch s;
    out.total_vertices = vertices_upto(lines, rank_at_left, slab.right, s);
  }
  const long long total = out.total_vertices;
  if (total == 0) return out;

  // One boundary per distinct interior target count round(i*V/m_max).
  std::vector<long long> targets;
  for (int i = 1; i < m_max; ++i) {
    const long long t = std::llround(static_cast<double>(i) * static_cast<double>(total) / m_max);
    if (t <= 0 || t >= total) continue;
    if (targets.empty() || targets.back() != t) targets.push_back(t);
  }

  const int num_targets = static_cast<int>(targets.size());
  std::vector<double> boundaries(static_cast<size_t>(num_targets));
  std::vector<int> steps(static_cast<size_t>(num_targets), 0);
  const double min_width = width_floor * slab.width();

#pragma omp parallel for schedule(dynamic)
  for (int ti = 0; ti < num_targets; ++ti) {
    CountScratch s;
    const long long target = targets[static_cast<size_t>(ti)];
    double a = slab.left, b = slab.right;
    double found = 0.5 * (a + b);
    bool exact = false;
    int used = 0;
    while (b - a >= min_width) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const long long count = vertices_upto(lines, rank_at_left, mid, s);
      ++used;
      if (count == target) {
        found = mid;
        exact = true;
        break;
      }
      if (count < target) {
        a = mid;
      } else {
        b = mid;
      }
    }
    if (!exact) found = 0.5 * (a + b);
    boundaries[static_cast<size_t>(ti)] = found;
    steps[static_cast<size_t>(ti)] = used;
  }

  out.max_bisection_steps = steps.empty() ? 0 : *std::max_element(steps.begin(), steps.end());
  std::sort(boundaries.begin(), boundaries.end());
  for (double x : boundaries) {
    if (x <= slab.left || x >= slab.right) continue;
    if (!out.boundaries.empty() && out.boundaries.back() == x) continue;
    out.boundaries.push_back(x);
  }
  // A slab supports at most m_max subslabs.
  if (static_cast<int>(out.boundaries.size()) > m_max - 1)
    out.boundaries.resize(static_cast<size_t>(m_max - 1));
  return out;
}

std::vector<double> subdivide_slab(const std::vector<DualLine>& lines,
                                   const Slab& slab, int m_max) {
  return subdivide_slab_ex(lines, slab, m_max, 1e-13).boundaries;
}

Trapezoid build_trapezoid(const std::vector<DualLine>& lines, const Slab& subslab,
                          int lam) {
  const int n = static_cast<int>(lines.size());
  if (n < 2) throw DegenerateError("trapezoid needs at least 2 lines");
  const int delta = n / 8;
  const int up = std::min(n, lam + delta);
  const int lo = std::max(1, lam - delta);

  Trapezoid t;
  t.x_left = subslab.left;
  t.x_right = subslab.right;
  t.y_upper_left = level_value_at(lines, subslab.left, up);
  t.y_upper_right = level_value_at(lines, subslab.right, up);
  t.y_lower_left = level_value_at(lines, subslab.left, lo);
  t.y_lower_right = level_value_at(lines, subslab.right, lo);

  const double w = subslab.right - subslab.left;
  t.upper_slope = (t.y_upper_right - t.y_upper_left) / w;
  t.upper_intercept = t.y_upper_left - t.upper_slope * subslab.left;
  t.lower_slope = (t.y_lower_right - t.y_lower_left) / w;
  t.lower_intercept = t.y_lower_left - t.lower_slope * subslab.left;
  return t;
}

bool line_intersects_tube_in_range(const DualLine& g, const Trapezoid& trap,
                                   double x0, double x1) {
  return line_in_tube_band(g.slope, g.intercept, band_of(trap), x0, x1, kTubeTol);
}

SlabState iterate_once(const SlabState& state, const PlanarParams& params,
                       IterationTrace* trace) {
  const int n = static_cast<int>(state.lines.size());
  if (n <= params.min_lines)
    throw DomainError("iterate_once called at or below the brute-force threshold");

  const SubdivisionResult sub =
      subdivide_slab_ex(state.lines, state.slab, params.m_max, params.width_floor);
  const int m = static_cast<int>(sub.boundaries.size()) + 1;

  // Walls of the m subslabs.
  std::vector<double> walls;
  walls.reserve(static_cast<size_t>(m) + 1);
  walls.push_back(state.slab.left);
  walls.insert(walls.end(), sub.boundaries.begin(), sub.boundaries.end());
  walls.push_back(state.slab.right);

  std::vector<Trapezoid> traps(static_cast<size_t>(m));
  std::vector<int> counts(static_cast<size_t>(m));
  std::vector<char> flags(static_cast<size_t>(n));
  for (int i = 0; i < m; ++i) {
    const Slab sub_i{walls[static_cast<size_t>(i)], walls[static_cast<size_t>(i) + 1]};
    traps[static_cast<size_t>(i)] = build_trapezoid(state.lines, sub_i, state.lambda);
    const double wi = sub_i.width();
    const double core_l = sub_i.left + params.gamma * wi;
    const double core_r = sub_i.right - params.gamma * wi;
    counts[static_cast<size_t>(i)] = kernels::flag_tube_hits(
        state.lines, band_of(traps[static_cast<size_t>(i)]), core_l, core_r,
        kTubeTol, flags);
  }

  // Among subslabs of width >= w/m, the one whose tube the fewest lines
  // enter; ties go left. If floating point leaves none wide enough, every
  // subslab becomes eligible.
  const double need = state.slab.width() / m;
  int chosen = -1;
  for (int pass = 0; pass < 2 && chosen < 0; ++pass) {
    for (int i = 0; i < m; ++i) {
      const double wi = walls[static_cast<size_t>(i) + 1] - walls[static_cast<size_t>(i)];
      if (pass == 0 && wi < need) continue;
      if (chosen < 0 || counts[static_cast<size_t>(i)] < counts[static_cast<size_t>(chosen)])
        chosen = i;
    }
  }

  const Slab sub_c{walls[static_cast<size_t>(chosen)], walls[static_cast<size_t>(chosen) + 1]};
  const double wc = sub_c.width();
  const Slab core{sub_c.left + params.gamma * wc, sub_c.right - params.gamma * wc};
  const Trapezoid& trap = traps[static_cast<size_t>(chosen)];
  kernels::flag_tube_hits(state.lines, band_of(trap), core.left, core.right,
                          kTubeTol, flags);

  SlabState next;
  next.lines.reserve(static_cast<size_t>(counts[static_cast<size_t>(chosen)]));
  int below = 0;
  const double x_mid = 0.5 * (core.left + core.right);
  const double tube_hi = trap.upper_slope * x_mid + trap.upper_intercept +
                         std::sqrt(1.0 + x_mid * x_mid);
  const double tube_lo = trap.lower_slope * x_mid + trap.lower_intercept -
                         std::sqrt(1.0 + x_mid * x_mid);
  for (int i = 0; i < n; ++i) {
    if (flags[static_cast<size_t>(i)]) {
      next.lines.push_back(state.lines[static_cast<size_t>(i)]);
      continue;
    }
    // A discarded line cannot cross the tube inside the core, so its side at
    // the core midpoint is its side throughout.
    const double v = state.lines[static_cast<size_t>(i)].value_at(x_mid);
    if (v < tube_lo) {
      ++below;
    } else if (!(v > tube_hi)) {
      throw std::logic_error("discarded line sits inside the tube");
    }
  }

  const int survivors = static_cast<int>(next.lines.size());
  const int discarded = n - survivors;
  if (discarded == 0 && !(core.width() < state.slab.width()))
    throw NoProgressError("iteration neither discarded lines nor shrank the slab");

  next.slab = core;
  next.lambda = state.lambda - below;
  next.discarded_below = state.discarded_below + below;
  next.iteration = state.iteration + 1;
  if (next.lambda < 1 || next.lambda > survivors)
    throw std::logic_error("tracked level escaped the tube");

  if (trace) {
    trace->iteration = state.iteration;
    trace->slab = state.slab;
    trace->boundaries = sub.boundaries;
    trace->m = m;
    trace->tube_counts = counts;
    trace->chosen = chosen;
    trace->chosen_trapezoid = trap;
    trace->survivors = survivors;
    trace->lambda = next.lambda;
    trace->discarded_below_total = next.discarded_below;
    trace->new_width = core.width();
  }
  return next;
}

HalvingResult halving_line(const BallSet& balls, const PlanarParams& params,
                           std::vector<IterationTrace>* trace) {
  if (balls.dim != 2) throw DimensionError("halving_line requires dim = 2");
  const int n0 = balls.size();
  if (n0 < 1) throw DomainError("halving_line needs at least one ball");

  // Odd working set: drop the lexicographically smallest center if n is even.
  int removed_id = -1;
  if (n0 % 2 == 0) {
    removed_id = 0;
    for (int i = 1; i < n0; ++i) {
      auto a = balls.center(i), b = balls.center(removed_id);
      if (a[0] < b[0] || (a[0] == b[0] && a[1] < b[1])) removed_id = i;
    }
  }

  BallSet working(2);
  std::vector<int> original_id;
  for (int i = 0; i < n0; ++i) {
    if (i == removed_id) continue;
    working.add(balls.center(i));
    original_id.push_back(i);
  }
  const int n = working.size();

  auto [rotated, angle] = rotate_to_general_position(working);

  SlabState state;
  state.lines.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    state.lines.push_back(dualize_point(rotated.point(i), original_id[static_cast<size_t>(i)]));
  state.slab = Slab{0.0, 1.0};
  state.lambda = (n + 1) / 2;

  const double theory_floor =
      std::pow(8.0 * params.m_max / (params.gamma * params.epsilon), 2.0) *
      std::log(static_cast<double>(std::max(n, 2))) / n;

  while (static_cast<int>(state.lines.size()) > params.min_lines &&
         state.slab.width() >= params.width_floor) {
    IterationTrace record;
    try {
      state = iterate_once(state, params, &record);
    } catch (const NoProgressError&) {
      break;
    }
    record.theoretical_width_floor = theory_floor;
    if (trace) trace->push_back(std::move(record));
  }

  // Brute-force finish: the level point at the slab midpoint, or at the best
  // of 33 sampled slopes when optimize_finish is set.
  double x_star = 0.5 * (state.slab.left + state.slab.right);
  if (params.optimize_finish) {
    int best_cuts = -1;
    for (int j = 0; j < 33; ++j) {
      const double x = state.slab.left + state.slab.width() * j / 32.0;
      const double y = level_value_at(state.lines, x, state.lambda);
      const VerticalSegment seg = dual_segment_for_line(x, -y);
      int cuts = 0;
      for (const DualLine& g : state.lines)
        if (dual_segment_crossing(g, seg)) ++cuts;
      if (best_cuts < 0 || cuts < best_cuts) {
        best_cuts = cuts;
        x_star = x;
      }
    }
  }

  std::vector<Ranked> items(state.lines.size());
  for (size_t i = 0; i < state.lines.size(); ++i)
    items[i] = Ranked{state.lines[i].value_at(x_star), state.lines[i].id};
  const Ranked level = rank_select(std::move(items), state.lambda);
  const int defining_id = level.tag;

  // Primal line in the rotated frame: slope x_star through the defining
  // center. Rotate its normal back and re-anchor the offset on the original
  // center so the defining center sits exactly on the reported line.
  const double c = std::cos(angle), s = std::sin(angle);
  const Direction normal_rot = unit_direction({-x_star, 1.0});
  const Direction normal{{normal_rot[0] * c + normal_rot[1] * s,
                          -normal_rot[0] * s + normal_rot[1] * c}};
  auto anchor = balls.center(defining_id);
  const double offset = normal[0] * anchor[0] + normal[1] * anchor[1];

  HalvingResult result;
  result.plane = Hyperplane{normal, offset};
  result.slope = -normal[0] / normal[1];
  result.intercept = offset / normal[1];
  result.iterations = state.iteration;
  result.survivors_at_finish = static_cast<int>(state.lines.size());
  result.rotation_angle = angle;
  result.removed_id = removed_id;

  // Discarded lines provably stay clear of the line, so only survivors (and
  // the set-aside center) can be intersected.
  std::vector<int> candidates;
  candidates.reserve(state.lines.size() + 1);
  for (const DualLine& g : state.lines) candidates.push_back(g.id);
  if (removed_id >= 0) candidates.push_back(removed_id);
  std::sort(candidates.begin(), candidates.end());
  for (int id : candidates)
    if (ball_intersects_hyperplane(result.plane, balls.center(id)))
      result.intersected_ids.push_back(id);
  result.intersected = static_cast<int>(result.intersected_ids.size());

  const oracle::SideCounts sides = oracle::count_sides(balls, result.plane);
  result.left_closed = sides.left_closed();
  result.right_closed = sides.right_closed();
  return result;
}

}  // namespace ballsep
