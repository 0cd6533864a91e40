#include "ballsep/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballsep/halving_2d.hpp"
#include "ballsep/instances.hpp"
#include "ballsep/oracle.hpp"
#include "ballsep/separator_nd.hpp"
#include "ballsep/svg.hpp"

namespace ballsep {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  int dim = 2;
  std::string layout;
  int side = 0;
  int n = 0;
  int n_clusters = 4;
  double spacing = 2.5;
  std::uint64_t seed = 0;
  std::string out_path;
};

int do_gen(const GenOptions& o, std::ostream& out) {
  BallSet balls;
  if (o.layout == "grid") {
    if (o.side < 1) throw DomainError("--layout grid requires --side");
    balls = jittered_grid(o.dim, o.side, o.spacing, o.seed);
  } else if (o.layout == "clusters") {
    if (o.n < 1) throw DomainError("--layout clusters requires --n");
    balls = clusters(o.dim, o.n, o.n_clusters, o.seed);
  } else if (o.layout == "row") {
    if (o.n < 1) throw DomainError("--layout row requires --n");
    if (o.dim != 2) throw DimensionError("--layout row is 2-dimensional");
    balls = collinear_row(o.n, o.spacing);
  } else {
    throw DomainError("unknown layout '" + o.layout + "'");
  }
  save_instance(balls, o.out_path);
  out << "wrote " << o.out_path << ": d=" << balls.dim << " n=" << balls.size()
      << "\n";
  return 0;
}

// ---------------------------------------------------------------- halve

struct HalveOptions {
  std::string in_path;
  std::string algo;
  double alpha = 0.25;
  bool alpha_given = false;
  bool f_log = false;
  double gamma = 0.25;
  double epsilon = 0.25;
  int min_lines = 24;
  int m_max = 64;
  bool optimize_finish = false;
  std::string trace_path;
  bool no_timing = false;
};

json trace_to_json(const IterationTrace& r) {
  json t;
  t["iteration"] = r.iteration;
  t["slab"] = {r.slab.left, r.slab.right};
  t["m"] = r.m;
  t["boundaries"] = r.boundaries;
  t["tube_counts"] = r.tube_counts;
  t["chosen"] = r.chosen;
  t["trapezoid"] = {
      {"x", {r.chosen_trapezoid.x_left, r.chosen_trapezoid.x_right}},
      {"upper", {r.chosen_trapezoid.y_upper_left, r.chosen_trapezoid.y_upper_right}},
      {"lower", {r.chosen_trapezoid.y_lower_left, r.chosen_trapezoid.y_lower_right}},
      {"a", {r.chosen_trapezoid.upper_slope, r.chosen_trapezoid.upper_intercept}},
      {"b", {r.chosen_trapezoid.lower_slope, r.chosen_trapezoid.lower_intercept}}};
  t["survivors"] = r.survivors;
  t["lambda"] = r.lambda;
  t["discarded_below"] = r.discarded_below_total;
  t["new_width"] = r.new_width;
  t["theory_width_floor"] = r.theoretical_width_floor;
  return t;
}

int do_halve(const HalveOptions& o, std::ostream& out) {
  const auto start = Clock::now();
  const BallSet balls = load_instance(o.in_path);
  const int n = balls.size();

  json j;
  std::vector<std::string> warnings;
  j["n"] = n;
  j["d"] = balls.dim;

  if (o.algo == "planar") {
    if (balls.dim != 2) throw DimensionError("--algo planar requires a 2-d instance");
    PlanarParams params;
    params.gamma = o.gamma;
    params.epsilon = o.epsilon;
    params.min_lines = o.min_lines;
    params.m_max = o.m_max;
    params.optimize_finish = o.optimize_finish;

    std::vector<IterationTrace> trace;
    const HalvingResult hr =
        halving_line(balls, params, o.trace_path.empty() ? nullptr : &trace);

    if (!o.trace_path.empty()) {
      std::ofstream tf(o.trace_path);
      if (!tf) throw Error("cannot write " + o.trace_path);
      for (const IterationTrace& r : trace) tf << trace_to_json(r).dump() << "\n";
    }

    j["algorithm"] = "planar";
    j["normal"] = hr.plane.normal.coords;
    j["offset"] = hr.plane.offset;
    j["left_closed"] = hr.left_closed;
    j["right_closed"] = hr.right_closed;
    j["intersected"] = hr.intersected;
    j["intersected_ids"] = hr.intersected_ids;
    j["guarantees"] = {{"min_side", (n + 1) / 2}, {"max_cut", nullptr}};
    j["iterations"] = hr.iterations;
  } else if (o.algo == "nd") {
    const double f_value = std::log2(std::max(2.0, static_cast<double>(n)));
    const auto [b, k] = o.f_log ? f_choice(balls.dim, n, f_value)
                                : alpha_choice(balls.dim, n, o.alpha);
    SeparatorParams params;
    try {
      params = check_conditions(balls.dim, n, b, k);
    } catch (const ConditionError& e) {
      warnings.emplace_back(e.what());
      params = params_unchecked(balls.dim, n, b, k);
    }

    const SeparatorResult sr = find_separator_nd(balls, params);
    if (sr.fallback)
      warnings.push_back("fallback: no direction reached the spread threshold t=" +
                         std::to_string(params.t));

    j["algorithm"] = "nd";
    j["normal"] = sr.plane.normal.coords;
    j["offset"] = sr.plane.offset;
    j["left_closed"] = sr.left_closed;
    j["right_closed"] = sr.right_closed;
    j["intersected"] = sr.intersected;
    j["intersected_ids"] = sr.intersected_ids;
    if (sr.fallback) {
      j["guarantees"] = {{"min_side", sr.guaranteed_min_side}, {"max_cut", nullptr}};
    } else {
      j["guarantees"] = {{"min_side", sr.guaranteed_min_side},
                         {"max_cut", sr.guaranteed_max_cut}};
    }
    j["iterations"] = sr.directions_scanned;
  } else {
    throw DomainError("unknown algorithm '" + o.algo + "'");
  }

  j["warnings"] = warnings;
  j["wall_ms"] = o.no_timing ? 0.0 : ms_since(start);
  out << j.dump(2) << "\n";
  return warnings.empty() ? 0 : 2;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string in_path;
  std::string normal_csv;
  double offset = 0.0;
  int m = 0;
};

int do_verify(const VerifyOptions& o, std::ostream& out) {
  const BallSet balls = load_instance(o.in_path);
  std::vector<double> v = parse_csv_doubles(o.normal_csv);
  if (static_cast<int>(v.size()) != balls.dim)
    throw DimensionError("normal has " + std::to_string(v.size()) +
                         " components, instance is " + std::to_string(balls.dim) +
                         "-dimensional");
  double norm = 0.0;
  for (double c : v) norm += c * c;
  norm = std::sqrt(norm);
  const Hyperplane plane{unit_direction(std::move(v)), o.offset / norm};

  const oracle::SideCounts sides = oracle::count_sides(balls, plane);
  const oracle::IntersectedCount cut = oracle::count_intersected(balls, plane);
  const bool pass = oracle::verify_m_separator(balls, plane, o.m);

  out << "n=" << balls.size() << " d=" << balls.dim << "\n";
  out << "left_closed=" << sides.left_closed() << " right_closed="
      << sides.right_closed() << " on=" << sides.on << " intersected=" << cut.count
      << "\n";
  out << "m-separator(m=" << o.m << "): " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string algo;
  std::string sizes_csv;
  std::uint64_t seed = 0;
  int reps = 3;
  double alpha = 0.25;
  std::string out_path;
  bool no_timing = false;
};

int do_bench(const BenchOptions& o, std::ostream& out) {
  const std::vector<double> sizes_raw = parse_csv_doubles(o.sizes_csv);
  if (sizes_raw.empty()) throw DomainError("--sizes must name at least one size");
  if (o.algo != "nd" && o.algo != "planar")
    throw DomainError("unknown algorithm '" + o.algo + "'");

  std::ostringstream csv;
  csv << "n,algo,mean_ms,intersected,intersected_over_sqrt_nlogn,iterations\n";
  for (double size_raw : sizes_raw) {
    const int n = static_cast<int>(size_raw);
    if (n < 1) throw DomainError("sizes must be positive");
    const BallSet inst = jittered_grid_n(2, n, 2.5, o.seed);

    double total_ms = 0.0;
    int intersected = 0, iterations = 0;
    for (int rep = 0; rep < std::max(1, o.reps); ++rep) {
      const auto start = Clock::now();
      if (o.algo == "planar") {
        const HalvingResult hr = halving_line(inst, PlanarParams{});
        intersected = hr.intersected;
        iterations = hr.iterations;
      } else {
        const auto [b, k] = alpha_choice(2, n, o.alpha);
        SeparatorParams params;
        try {
          params = check_conditions(2, n, b, k);
        } catch (const ConditionError&) {
          params = params_unchecked(2, n, b, k);
        }
        const SeparatorResult sr = find_separator_nd(inst, params);
        intersected = sr.intersected;
        iterations = sr.directions_scanned;
      }
      total_ms += ms_since(start);
    }
    const double mean_ms = o.no_timing ? 0.0 : total_ms / std::max(1, o.reps);
    const double scaled =
        intersected / std::sqrt(static_cast<double>(n) *
                                std::log2(std::max(2.0, static_cast<double>(n))));
    char row[160];
    std::snprintf(row, sizeof(row), "%d,%s,%.3f,%d,%.6f,%d\n", n, o.algo.c_str(),
                  mean_ms, intersected, scaled, iterations);
    csv << row;
  }

  if (o.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out_path);
    if (!f) throw Error("cannot write " + o.out_path);
    f << csv.str();
    out << "wrote " << o.out_path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- plot

struct PlotOptions {
  std::string in_path;
  std::string result_path;
  std::string trace_path;
  std::string out_path;
};

// Clips the line {p : normal . p = offset} to the box, returning success.
bool clip_line_to_box(double nx, double ny, double offset, double x0, double y0,
                      double x1, double y1, std::pair<double, double>& a,
                      std::pair<double, double>& b) {
  const double dx = -ny, dy = nx;
  const double px = nx * offset, py = ny * offset;
  double tmin = -1e300, tmax = 1e300;
  const auto clip1 = [&](double d, double lo_rel, double hi_rel) {
    if (std::abs(d) < 1e-300) return lo_rel <= 0.0 && 0.0 <= hi_rel;
    double t0 = lo_rel / d, t1 = hi_rel / d;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    return true;
  };
  if (!clip1(dx, x0 - px, x1 - px)) return false;
  if (!clip1(dy, y0 - py, y1 - py)) return false;
  if (tmin > tmax) return false;
  a = {px + tmin * dx, py + tmin * dy};
  b = {px + tmax * dx, py + tmax * dy};
  return true;
}

void plot_trace_iteration(const json& t, const std::string& path) {
  SvgDoc doc;
  const double sl = t["slab"][0], sr = t["slab"][1];
  const json& trap = t["trapezoid"];
  const double xl = trap["x"][0], xr = trap["x"][1];
  const double yul = trap["upper"][0], yur = trap["upper"][1];
  const double yll = trap["lower"][0], ylr = trap["lower"][1];
  const double ma = trap["a"][0], ca = trap["a"][1];
  const double mb = trap["b"][0], cb = trap["b"][1];

  // Slabs shrink geometrically, so the x-axis is normalized per slab to
  // keep late iterations readable. The true bounds go into the caption.
  const double y_mid = 0.5 * (std::min(yll, ylr) + std::max(yul, yur));
  const double y_span = std::max(std::max(yul, yur) - std::min(yll, ylr) +
                                     2.0 * std::sqrt(1.0 + xl * xl) + 2.0,
                                 1e-9);
  const auto nx = [&](double x) { return (x - sl) / (sr - sl); };
  const auto ny = [&](double y) { return (y - y_mid) / y_span; };
  const double y_lo = ny(y_mid - 0.5 * y_span), y_hi = ny(y_mid + 0.5 * y_span);

  doc.rect(nx(sl), y_lo, nx(sr), y_hi, "slab");
  for (const auto& bx : t["boundaries"])
    doc.line(nx(bx.get<double>()), y_lo, nx(bx.get<double>()), y_hi, "boundary");
  doc.polygon({{nx(xl), ny(yll)}, {nx(xr), ny(ylr)}, {nx(xr), ny(yur)}, {nx(xl), ny(yul)}},
              "trapezoid");

  std::vector<std::pair<double, double>> upper, lower;
  for (int i = 0; i <= 64; ++i) {
    const double x = xl + (xr - xl) * i / 64.0;
    upper.emplace_back(nx(x), ny(ma * x + ca + std::sqrt(1.0 + x * x)));
    lower.emplace_back(nx(x), ny(mb * x + cb - std::sqrt(1.0 + x * x)));
  }
  doc.polyline(upper, "tube");
  doc.polyline(lower, "tube");
  char caption[160];
  std::snprintf(caption, sizeof(caption),
                "iter=%d slab=[%.6g,%.6g] m=%d survivors=%d lambda=%d",
                t["iteration"].get<int>(), sl, sr, t["m"].get<int>(),
                t["survivors"].get<int>(), t["lambda"].get<int>());
  doc.text(0.0, y_hi + 0.03, caption);

  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  doc.write(f);
}

int do_plot(const PlotOptions& o, std::ostream& out) {
  if (!o.trace_path.empty()) {
    std::ifstream tf(o.trace_path);
    if (!tf) throw Error("cannot open " + o.trace_path);
    std::string stem = o.out_path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".svg")
      stem = stem.substr(0, stem.size() - 4);
    std::string line;
    int idx = 0;
    while (std::getline(tf, line)) {
      if (line.empty()) continue;
      const json t = json::parse(line);
      char name[32];
      std::snprintf(name, sizeof(name), "_%03d.svg", idx);
      plot_trace_iteration(t, stem + name);
      ++idx;
    }
    out << "wrote " << idx << " trace plots to " << stem << "_*.svg\n";
    return 0;
  }

  const BallSet balls = load_instance(o.in_path);
  if (balls.dim != 2) throw DimensionError("plot requires a 2-d instance");

  json result;
  if (!o.result_path.empty()) {
    std::ifstream rf(o.result_path);
    if (!rf) throw Error("cannot open " + o.result_path);
    rf >> result;
  }
  std::vector<char> cut_flags(static_cast<size_t>(balls.size()), 0);
  if (result.contains("intersected_ids"))
    for (int id : result["intersected_ids"].get<std::vector<int>>())
      cut_flags[static_cast<size_t>(id)] = 1;

  SvgDoc doc;
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (int i = 0; i < balls.size(); ++i) {
    auto c = balls.center(i);
    x0 = std::min(x0, c[0] - 1.0);
    x1 = std::max(x1, c[0] + 1.0);
    y0 = std::min(y0, c[1] - 1.0);
    y1 = std::max(y1, c[1] + 1.0);
    doc.circle(c[0], c[1], 1.0,
               cut_flags[static_cast<size_t>(i)] ? "intersected" : "disk");
  }
  if (result.contains("normal")) {
    const double nx = result["normal"][0], ny = result["normal"][1];
    const double offset = result["offset"];
    std::pair<double, double> a, b;
    if (clip_line_to_box(nx, ny, offset, x0, y0, x1, y1, a, b))
      doc.line(a.first, a.second, b.first, b.second, "separator");
    doc.text(x0, y1,
             "left_closed=" + std::to_string(result["left_closed"].get<int>()) +
                 " right_closed=" + std::to_string(result["right_closed"].get<int>()) +
                 " intersected=" + std::to_string(result["intersected"].get<int>()));
  }

  std::ofstream f(o.out_path);
  if (!f) throw Error("cannot write " + o.out_path);
  doc.write(f);
  out << "wrote " << o.out_path << "\n";
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"separators and halving lines for sets of disjoint unit balls"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a disjoint unit-ball instance");
  gen_cmd->add_option("--dim", gen.dim, "dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--layout", gen.layout, "grid|clusters|row")->required();
  gen_cmd->add_option("--side", gen.side, "grid side length");
  gen_cmd->add_option("--n", gen.n, "instance size (clusters/row)");
  gen_cmd->add_option("--clusters", gen.n_clusters, "cluster count");
  gen_cmd->add_option("--spacing", gen.spacing, "grid spacing, >= 2.2");
  gen_cmd->add_option("--seed", gen.seed, "jitter seed");
  gen_cmd->add_option("--out", gen.out_path, "output file")->required();

  HalveOptions halve;
  CLI::App* halve_cmd = app.add_subcommand("halve", "compute a separating line/plane");
  halve_cmd->add_option("--in", halve.in_path, "instance file")->required();
  halve_cmd->add_option("--algo", halve.algo, "nd|planar")->required();
  CLI::Option* alpha_opt =
      halve_cmd->add_option("--alpha", halve.alpha, "side fraction in (0, 1/2), nd only");
  halve_cmd->add_flag("--f-log", halve.f_log, "use f = log2(n) parameters, nd only")
      ->excludes(alpha_opt);
  halve_cmd->add_option("--gamma", halve.gamma, "core fraction, planar only");
  halve_cmd->add_option("--epsilon", halve.epsilon, "pruning slack, planar only");
  halve_cmd->add_option("--min-lines", halve.min_lines, "brute-force threshold");
  halve_cmd->add_option("--m-max", halve.m_max, "subslab limit");
  halve_cmd->add_flag("--optimize-finish", halve.optimize_finish,
                      "scan 33 finish slopes for the fewest cuts");
  halve_cmd->add_option("--trace", halve.trace_path, "write per-iteration JSONL");
  halve_cmd->add_flag("--no-timing", halve.no_timing, "report wall_ms as 0");

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a separator against an instance");
  verify_cmd->add_option("--in", verify.in_path, "instance file")->required();
  verify_cmd->add_option("--normal", verify.normal_csv, "comma-separated normal")->required();
  verify_cmd->add_option("--offset", verify.offset, "plane offset")->required();
  verify_cmd->add_option("--m", verify.m, "separator quality to check")->required();

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "scaling benchmark over instance sizes");
  bench_cmd->add_option("--algo", bench.algo, "nd|planar")->required();
  bench_cmd->add_option("--sizes", bench.sizes_csv, "comma-separated sizes")->required();
  bench_cmd->add_option("--seed", bench.seed, "instance seed");
  bench_cmd->add_option("--reps", bench.reps, "repetitions per size");
  bench_cmd->add_option("--alpha", bench.alpha, "nd side fraction");
  bench_cmd->add_option("--out", bench.out_path, "CSV path (stdout if omitted)");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "report mean_ms as 0");

  PlotOptions plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "render an instance or trace as SVG");
  plot_cmd->add_option("--in", plot.in_path, "instance file");
  plot_cmd->add_option("--result", plot.result_path, "halve JSON output");
  plot_cmd->add_option("--trace", plot.trace_path, "halve --trace JSONL");
  plot_cmd->add_option("--out", plot.out_path, "output SVG")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) return do_gen(gen, out);
    if (*halve_cmd) return do_halve(halve, out);
    if (*verify_cmd) return do_verify(verify, out);
    if (*bench_cmd) return do_bench(bench, out);
    if (*plot_cmd) return do_plot(plot, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace ballsep
