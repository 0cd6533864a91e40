#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "ballsep/halving_2d.hpp"
#include "ballsep/instances.hpp"
#include "ballsep/oracle.hpp"

using namespace ballsep;

namespace {

std::vector<DualLine> seeded_lines(int n, std::uint64_t seed) {
  std::vector<DualLine> lines(static_cast<size_t>(n));
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    state = mix64(state);
    const double m = static_cast<double>(state >> 11) * 0x1.0p-53 * 6.0 - 3.0;
    state = mix64(state);
    const double c = static_cast<double>(state >> 11) * 0x1.0p-53 * 20.0 - 10.0;
    lines[static_cast<size_t>(i)] = DualLine{m, c, i};
  }
  return lines;
}

// Initial prune-and-search state for a ball set, exactly as halving_line
// builds it (odd n assumed).
SlabState initial_state(const BallSet& balls) {
  const auto [rot, angle] = rotate_to_general_position(balls);
  SlabState st;
  for (int i = 0; i < rot.size(); ++i)
    st.lines.push_back(dualize_point(rot.point(i), i));
  st.slab = Slab{0.0, 1.0};
  st.lambda = (rot.size() + 1) / 2;
  return st;
}

double trap_upper(const Trapezoid& t, double x) {
  return t.upper_slope * x + t.upper_intercept;
}
double trap_lower(const Trapezoid& t, double x) {
  return t.lower_slope * x + t.lower_intercept;
}
double tube_upper(const Trapezoid& t, double x) {
  return trap_upper(t, x) + std::sqrt(1.0 + x * x);
}
double tube_lower(const Trapezoid& t, double x) {
  return trap_lower(t, x) - std::sqrt(1.0 + x * x);
}

bool line_hits_trapezoid(const DualLine& g, const Trapezoid& t) {
  const double gl = g.value_at(t.x_left), gr = g.value_at(t.x_right);
  const bool above = gl > trap_upper(t, t.x_left) && gr > trap_upper(t, t.x_right);
  const bool below = gl < trap_lower(t, t.x_left) && gr < trap_lower(t, t.x_right);
  return !above && !below;
}

}  // namespace

TEST_CASE("level_value_at") {
  const std::vector<DualLine> lines{{0.0, 1.0, 0}, {1.0, 0.0, 1}, {-1.0, 3.0, 2}};
  CHECK(level_value_at(lines, 0.0, 1) == 0.0);
  CHECK(level_value_at(lines, 0.0, 2) == 1.0);
  CHECK(level_value_at(lines, 3.0, 2) == 1.0);  // values {1, 3, 0}
  CHECK_THROWS_AS(level_value_at(lines, 0.0, 4), RankError);
}

TEST_CASE("order_at") {
  const std::vector<DualLine> two{{1.0, 0.0, 0}, {-1.0, 2.0, 1}};
  CHECK(order_at(two, 0.0) == std::vector<int>{0, 1});
  CHECK(order_at(two, 2.0) == std::vector<int>{1, 0});
  const std::vector<DualLine> one{{2.0, 5.0, 9}};
  CHECK(order_at(one, 0.3) == std::vector<int>{9});
}

TEST_CASE("vertices_in") {
  const std::vector<DualLine> two{{1.0, 0.0, 0}, {-1.0, 2.0, 1}};
  CHECK(vertices_in(two, 0.0, 2.0) == 1);
  CHECK(vertices_in(two, 2.0, 3.0) == 0);

  const auto lines = seeded_lines(100, 31);
  CHECK(vertices_in(lines, 0.0, 1.0) == oracle::brute_vertices_in_slab(lines, 0.0, 1.0));
  CHECK(vertices_in(lines, 0.2, 0.7) == oracle::brute_vertices_in_slab(lines, 0.2, 0.7));
}

TEST_CASE("subdivide_slab splits vertex counts evenly") {
  SUBCASE("two lines, one vertex") {
    const std::vector<DualLine> two{{1.0, 0.0, 0}, {-1.0, 1.0, 1}};
    const auto boundaries = subdivide_slab(two, Slab{0.0, 1.0}, 64);
    CHECK(boundaries.size() <= 1);
    std::vector<double> walls{0.0};
    walls.insert(walls.end(), boundaries.begin(), boundaries.end());
    walls.push_back(1.0);
    for (size_t i = 0; i + 1 < walls.size(); ++i)
      CHECK(oracle::brute_vertices_in_slab(two, walls[i], walls[i + 1]) <= 1);
  }
  SUBCASE("triangle of three lines") {
    const std::vector<DualLine> tri{{0.0, 0.5, 0}, {1.0, 0.0, 1}, {-1.0, 0.8, 2}};
    CHECK(vertices_in(tri, 0.0, 1.0) == 3);
    const auto boundaries = subdivide_slab(tri, Slab{0.0, 1.0}, 64);
    std::vector<double> walls{0.0};
    walls.insert(walls.end(), boundaries.begin(), boundaries.end());
    walls.push_back(1.0);
    for (size_t i = 0; i + 1 < walls.size(); ++i)
      CHECK(oracle::brute_vertices_in_slab(tri, walls[i], walls[i + 1]) <= 1);
  }
  SUBCASE("200 seeded lines") {
    const auto lines = seeded_lines(200, 77);
    const SubdivisionResult sub = subdivide_slab_ex(lines, Slab{0.0, 1.0}, 64, 1e-13);
    const long long v = sub.total_vertices;
    CHECK(v == oracle::brute_vertices_in_slab(lines, 0.0, 1.0));
    const long long per_slab = (v + 63) / 64 + 1;
    std::vector<double> walls{0.0};
    walls.insert(walls.end(), sub.boundaries.begin(), sub.boundaries.end());
    walls.push_back(1.0);
    CHECK(walls.size() <= 65);
    for (size_t i = 0; i + 1 < walls.size(); ++i) {
      const long long c = oracle::brute_vertices_in_slab(lines, walls[i], walls[i + 1]);
      CHECK(c <= per_slab);
      CHECK(c <= 19900 / 32);  // (1/32) * C(200,2)
    }
    CHECK(sub.max_bisection_steps <= 128);
  }
  SUBCASE("fewer than two lines is degenerate") {
    CHECK_THROWS_AS(subdivide_slab({{1.0, 0.0, 0}}, Slab{0.0, 1.0}, 64), DegenerateError);
  }
}

TEST_CASE("build_trapezoid on nine horizontal lines") {
  std::vector<DualLine> lines;
  for (int i = 1; i <= 9; ++i)
    lines.push_back(DualLine{0.0, static_cast<double>(i), i - 1});
  const Trapezoid t = build_trapezoid(lines, Slab{0.0, 1.0}, 5);
  CHECK(t.y_upper_left == 6.0);
  CHECK(t.y_upper_right == 6.0);
  CHECK(t.y_lower_left == 4.0);
  CHECK(t.y_lower_right == 4.0);
  int crossing = 0;
  for (const DualLine& g : lines)
    if (line_hits_trapezoid(g, t)) ++crossing;
  CHECK(crossing == 3);
  CHECK(crossing <= (9 + 1) / 2);
}

TEST_CASE("build_trapezoid degenerates gracefully on two lines") {
  const std::vector<DualLine> two{{1.0, 0.0, 0}, {-1.0, 1.0, 1}};
  const Trapezoid t = build_trapezoid(two, Slab{0.0, 0.4}, 1);
  // floor(2/8) = 0: both corner levels collapse onto level 1.
  CHECK(t.y_upper_left == t.y_lower_left);
  CHECK(t.y_upper_right == t.y_lower_right);
  const double level = level_value_at(two, 0.2, 1);
  CHECK(level >= trap_lower(t, 0.2) - 1e-12);
  CHECK(level <= trap_upper(t, 0.2) + 1e-12);
}

TEST_CASE("trapezoid contains the tracked level on seeded 50-line sets") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto lines = seeded_lines(50, seed);
    const Slab sub{0.3, 0.45};
    for (int lam : {10, 25, 40}) {
      const Trapezoid t = build_trapezoid(lines, sub, lam);
      for (int i = 0; i <= 100; ++i) {
        const double x = sub.left + (sub.right - sub.left) * i / 100.0;
        const double level = level_value_at(lines, x, lam);
        CHECK(level >= trap_lower(t, x) - 1e-9);
        CHECK(level <= trap_upper(t, x) + 1e-9);
      }
    }
  }
}

TEST_CASE("line_intersects_tube_in_range closed form") {
  // Carriers a: y = 1, b: y = -1 over [-0.5, 0.5].
  Trapezoid t;
  t.x_left = -0.5;
  t.x_right = 0.5;
  t.upper_slope = 0.0;
  t.upper_intercept = 1.0;
  t.lower_slope = 0.0;
  t.lower_intercept = -1.0;

  CHECK(line_intersects_tube_in_range(DualLine{0.0, 0.0, 0}, t, -0.5, 0.5));
  CHECK_FALSE(line_intersects_tube_in_range(DualLine{0.0, 10.0, 0}, t, -0.5, 0.5));
  CHECK(line_intersects_tube_in_range(DualLine{4.0, 0.0, 0}, t, -0.5, 0.5));
}

TEST_CASE("iterate_once keeps the level consistent on a triangle") {
  const std::vector<DualLine> tri{{0.0, 0.5, 0}, {1.0, 0.0, 1}, {-1.0, 0.8, 2}};
  SlabState st;
  st.lines = tri;
  st.slab = Slab{0.0, 1.0};
  st.lambda = 2;
  PlanarParams pp;
  pp.min_lines = 2;
  IterationTrace trace;
  const SlabState next = iterate_once(st, pp, &trace);
  CHECK(next.slab.width() < st.slab.width());
  CHECK(next.lambda >= 1);
  CHECK(next.lambda <= static_cast<int>(next.lines.size()));
  CHECK(next.lambda + next.discarded_below == 2);
  for (int i = 0; i <= 100; ++i) {
    const double x = next.slab.left + next.slab.width() * i / 100.0;
    CHECK(level_value_at(next.lines, x, next.lambda) == level_value_at(tri, x, 2));
  }
}

TEST_CASE("iterate_once on nine horizontal lines discards symmetrically") {
  std::vector<DualLine> lines;
  for (int i = 1; i <= 9; ++i)
    lines.push_back(DualLine{0.0, static_cast<double>(i), i - 1});
  SlabState st;
  st.lines = lines;
  st.slab = Slab{0.0, 1.0};
  st.lambda = 5;
  PlanarParams pp;
  pp.min_lines = 2;
  IterationTrace trace;
  const SlabState next = iterate_once(st, pp, &trace);
  CHECK(trace.m == 1);  // no vertices, nothing to subdivide
  // Tube spans levels 4..6 +- sqrt(1+x^2): y=3..7 survive, 1,2 and 8,9 fall.
  CHECK(next.lines.size() == 5);
  CHECK(next.discarded_below == 2);
  CHECK(next.lambda == 3);
  // The median value is untouched.
  const double x = 0.5 * (next.slab.left + next.slab.right);
  CHECK(level_value_at(next.lines, x, next.lambda) == 5.0);
}

TEST_CASE("iterate_once slab width bound on a seeded 301-line instance") {
  auto lines = seeded_lines(301, 13);
  SlabState st;
  st.lines = lines;
  st.slab = Slab{0.0, 1.0};
  st.lambda = 151;
  PlanarParams pp;
  IterationTrace trace;
  const SlabState next = iterate_once(st, pp, &trace);
  CHECK(next.slab.width() >=
        (1.0 - 2.0 * pp.gamma) * st.slab.width() / trace.m - 1e-15);
  CHECK(next.lines.size() <= st.lines.size());
  CHECK(trace.survivors == static_cast<int>(next.lines.size()));
  CHECK(trace.tube_counts[static_cast<size_t>(trace.chosen)] == trace.survivors);
}

TEST_CASE("iterate_once rejects too-small inputs") {
  SlabState st;
  st.lines = seeded_lines(5, 1);
  st.slab = Slab{0.0, 1.0};
  st.lambda = 3;
  PlanarParams pp;  // min_lines = 24
  CHECK_THROWS_AS(iterate_once(st, pp), DomainError);
}

TEST_CASE("prune-and-search invariants over full runs") {
  for (int n : {51, 101, 201}) {
    for (std::uint64_t seed : {1ULL, 7ULL}) {
      const BallSet inst = clusters(2, n, 3, seed);
      SlabState st = initial_state(inst);
      const std::vector<DualLine> original = st.lines;
      const int median = (n + 1) / 2;
      PlanarParams pp;

      while (static_cast<int>(st.lines.size()) > pp.min_lines &&
             st.slab.width() >= pp.width_floor) {
        const SlabState prev = st;
        IterationTrace trace;
        try {
          st = iterate_once(prev, pp, &trace);
        } catch (const NoProgressError&) {
          break;
        }

        // Monotone progress.
        CHECK(st.slab.width() < prev.slab.width());
        CHECK(st.lines.size() <= prev.lines.size());
        CHECK(st.lambda + st.discarded_below == median);

        // Pruning soundness: discarded lines stay strictly outside the tube
        // across the new slab.
        std::set<int> surviving;
        for (const DualLine& g : st.lines) surviving.insert(g.id);
        const Trapezoid& tube = trace.chosen_trapezoid;
        for (const DualLine& g : prev.lines) {
          if (surviving.count(g.id)) continue;
          for (int i = 0; i <= 100; ++i) {
            const double x = st.slab.left + st.slab.width() * i / 100.0;
            const double v = g.value_at(x);
            const bool outside = v > tube_upper(tube, x) || v < tube_lower(tube, x);
            CHECK(outside);
          }
        }

        // Level consistency at 100 sampled x in the new slab.
        for (int i = 0; i <= 100; ++i) {
          const double x = st.slab.left + st.slab.width() * i / 100.0;
          CHECK(level_value_at(st.lines, x, st.lambda) ==
                level_value_at(original, x, median));
        }

        // Every trapezoid of this iteration contains the level and is hit by
        // at most half of the lines.
        std::vector<double> walls{prev.slab.left};
        walls.insert(walls.end(), trace.boundaries.begin(), trace.boundaries.end());
        walls.push_back(prev.slab.right);
        for (size_t s = 0; s + 1 < walls.size(); ++s) {
          const Slab sub{walls[s], walls[s + 1]};
          const Trapezoid t = build_trapezoid(prev.lines, sub, prev.lambda);
          int crossing = 0;
          for (const DualLine& g : prev.lines)
            if (line_hits_trapezoid(g, t)) ++crossing;
          CHECK(crossing <= (static_cast<int>(prev.lines.size()) + 1) / 2);
          for (int i = 0; i <= 20; ++i) {
            const double x = sub.left + sub.width() * i / 20.0;
            const double level = level_value_at(prev.lines, x, prev.lambda);
            CHECK(level >= trap_lower(t, x) - 1e-9);
            CHECK(level <= trap_upper(t, x) + 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("halving_line on the collinear row") {
  const BallSet row = collinear_row(5, 3.0);
  const HalvingResult r = halving_line(row);
  // Only the line through (6, 0) puts 3 centers in each closed halfplane.
  CHECK(std::abs(signed_distance(r.plane, row.point(2))) < 1e-12);
  CHECK(r.left_closed >= 3);
  CHECK(r.right_closed >= 3);
  CHECK(r.intersected == 1);
  CHECK(r.intersected_ids == std::vector<int>{2});

  const auto best = oracle::best_halving_line_2d(row);
  CHECK(r.intersected == best.min_intersections);
}

TEST_CASE("halving_line on a single ball") {
  BallSet one(2);
  one.add(std::vector<double>{2.0, 1.0});
  const HalvingResult r = halving_line(one);
  CHECK(std::abs(signed_distance(r.plane, one.point(0))) < 1e-12);
  CHECK(r.left_closed == 1);
  CHECK(r.right_closed == 1);
  CHECK(r.intersected == 1);
}

TEST_CASE("halving_line on a 101-disk jittered layout") {
  const BallSet inst = jittered_grid_n(2, 101, 2.5, 7);
  const HalvingResult r = halving_line(inst);
  CHECK(r.left_closed >= 51);
  CHECK(r.right_closed >= 51);
  // The survivor-based count matches a full recount.
  const auto cut = oracle::count_intersected(inst, r.plane);
  CHECK(cut.count == r.intersected);
  CHECK(cut.ids == r.intersected_ids);
  const auto sides = oracle::count_sides(inst, r.plane);
  CHECK(sides.left_closed() == r.left_closed);
  CHECK(sides.right_closed() == r.right_closed);
}

TEST_CASE("halving_line on small instances stays near the exhaustive optimum") {
  for (int n : {5, 15, 25}) {
    for (std::uint64_t seed : {2ULL, 9ULL}) {
      const BallSet inst = clusters(2, n, 2, seed);
      const HalvingResult r = halving_line(inst);
      CHECK(r.left_closed >= (n + 1) / 2);
      CHECK(r.right_closed >= (n + 1) / 2);
      const auto best = oracle::best_halving_line_2d(inst);
      const int slack = 2 * static_cast<int>(std::ceil(std::sqrt(n)));
      CHECK(r.intersected <= best.min_intersections + slack);
    }
  }
}

TEST_CASE("halving_line handles even n by setting one center aside") {
  const BallSet row = collinear_row(6, 3.0);
  const HalvingResult r = halving_line(row);
  CHECK(r.removed_id == 0);  // lexicographically smallest center
  CHECK(r.left_closed >= 3);
  CHECK(r.right_closed >= 3);
  const auto sides = oracle::count_sides(row, r.plane);
  CHECK(sides.left_closed() == r.left_closed);
  CHECK(sides.right_closed() == r.right_closed);
}

TEST_CASE("halving_line needs a vertical-stack rotation") {
  BallSet stack(2);
  for (int i = 0; i < 5; ++i) stack.add(std::vector<double>{0.0, 2.5 * i});
  const HalvingResult r = halving_line(stack);
  CHECK(r.rotation_angle > 0.0);
  CHECK(r.left_closed >= 3);
  CHECK(r.right_closed >= 3);
}

TEST_CASE("halving_line larger odd instances halve exactly") {
  for (int n : {501, 2001}) {
    const BallSet inst = clusters(2, n, 4, 11);
    const HalvingResult r = halving_line(inst);
    CHECK(r.left_closed >= (n + 1) / 2);
    CHECK(r.right_closed >= (n + 1) / 2);
    const auto cut = oracle::count_intersected(inst, r.plane);
    CHECK(cut.count == r.intersected);
  }
}

TEST_CASE("halving_line is deterministic, trace included") {
  const BallSet inst = clusters(2, 201, 3, 5);
  std::vector<IterationTrace> ta, tb;
  const HalvingResult a = halving_line(inst, PlanarParams{}, &ta);
  const HalvingResult b = halving_line(inst, PlanarParams{}, &tb);
  CHECK(a.plane.normal.coords == b.plane.normal.coords);
  CHECK(a.plane.offset == b.plane.offset);
  CHECK(a.slope == b.slope);
  CHECK(a.intercept == b.intercept);
  CHECK(a.intersected_ids == b.intersected_ids);
  CHECK(a.iterations == b.iterations);
  REQUIRE(ta.size() == tb.size());
  for (size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].boundaries == tb[i].boundaries);
    CHECK(ta[i].tube_counts == tb[i].tube_counts);
    CHECK(ta[i].chosen == tb[i].chosen);
    CHECK(ta[i].lambda == tb[i].lambda);
  }
}

TEST_CASE("optimize_finish never cuts more disks than the plain finish") {
  const BallSet inst = clusters(2, 301, 2, 3);
  PlanarParams plain;
  PlanarParams opt;
  opt.optimize_finish = true;
  const HalvingResult r0 = halving_line(inst, plain);
  const HalvingResult r1 = halving_line(inst, opt);
  CHECK(r1.left_closed >= 151);
  CHECK(r1.right_closed >= 151);
  CHECK(r1.intersected <= r0.intersected);
}
