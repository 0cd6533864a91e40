#include "ballsep/instances.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ballsep/kernels.hpp"

namespace ballsep {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// Uniform in [-1, 1), keyed by (seed, index, coordinate).
double jitter_unit(std::uint64_t seed, std::uint64_t index, std::uint64_t coord) {
  const std::uint64_t h = mix64(seed ^ mix64(index ^ mix64(coord)));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

double jitter_amplitude(double spacing) {
  if (!(spacing >= 2.2))
    throw SpacingError("grid spacing must be >= 2.2, got " + std::to_string(spacing));
  return (spacing - 2.0) / 2.0 - 0.05;
}

// Emits the first n cells (row-major) of a side^d grid anchored at `origin`.
void emit_grid_cells(BallSet& out, int d, int side, int n, double spacing,
                     double amplitude, std::uint64_t seed,
                     std::span<const double> origin, std::uint64_t index_base) {
  std::vector<int> cell(static_cast<size_t>(d), 0);
  std::vector<double> c(static_cast<size_t>(d));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t index = index_base + static_cast<std::uint64_t>(i);
    for (int j = 0; j < d; ++j) {
      const double base = origin.empty() ? 0.0 : origin[static_cast<size_t>(j)];
      c[static_cast<size_t>(j)] =
          base + cell[static_cast<size_t>(j)] * spacing +
          amplitude * jitter_unit(seed, index, static_cast<std::uint64_t>(j));
    }
    out.add(c);
    for (int j = d - 1; j >= 0; --j) {
      if (++cell[static_cast<size_t>(j)] < side) break;
      cell[static_cast<size_t>(j)] = 0;
    }
  }
}

}  // namespace

BallSet jittered_grid(int d, int side, double spacing, std::uint64_t seed) {
  if (d < 1) throw DimensionError("dimension must be >= 1");
  if (side < 1) throw DomainError("grid side must be >= 1");
  const double amp = jitter_amplitude(spacing);
  int n = 1;
  for (int j = 0; j < d; ++j) n *= side;
  BallSet out(d);
  out.coords.reserve(static_cast<size_t>(n) * d);
  emit_grid_cells(out, d, side, n, spacing, amp, seed, {}, 0);
  return out;
}

BallSet jittered_grid_n(int d, int n, double spacing, std::uint64_t seed) {
  if (d < 1) throw DimensionError("dimension must be >= 1");
  if (n < 1) throw DomainError("instance size must be >= 1");
  const double amp = jitter_amplitude(spacing);
  int side = 1;
  while (std::pow(static_cast<double>(side), d) < static_cast<double>(n)) ++side;
  BallSet out(d);
  out.coords.reserve(static_cast<size_t>(n) * d);
  emit_grid_cells(out, d, side, n, spacing, amp, seed, {}, 0);
  return out;
}

BallSet collinear_row(int n, double spacing) {
  if (n < 1) throw DomainError("row size must be >= 1");
  if (!(spacing >= 2.2))
    throw SpacingError("row spacing must be >= 2.2, got " + std::to_string(spacing));
  BallSet out(2);
  out.coords.reserve(static_cast<size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    out.coords.push_back(i * spacing);
    out.coords.push_back(0.0);
  }
  return out;
}

BallSet clusters(int d, int n, int n_clusters, std::uint64_t seed) {
  if (d < 1) throw DimensionError("dimension must be >= 1");
  if (n < 1 || n_clusters < 1 || n_clusters > n)
    throw DomainError("need 1 <= n_clusters <= n");
  const double spacing = 2.5;
  const double amp = jitter_amplitude(spacing);

  // Largest sub-grid side, used to space the cluster anchors safely apart.
  const int n_first = n / n_clusters + (n % n_clusters > 0 ? 1 : 0);
  int side = 1;
  while (std::pow(static_cast<double>(side), d) < static_cast<double>(n_first)) ++side;
  const double stride = side * spacing + 50.0;

  BallSet out(d);
  out.coords.reserve(static_cast<size_t>(n) * d);
  std::vector<double> origin(static_cast<size_t>(d), 0.0);
  int emitted = 0;
  for (int c = 0; c < n_clusters; ++c) {
    const int n_c = n / n_clusters + (c < n % n_clusters ? 1 : 0);
    // Anchors march along the first axis; each cluster spans at most
    // side*spacing there, so consecutive clusters keep a 50-unit gap.
    origin[0] = stride * static_cast<double>(c);
    // A small per-cluster shift on the other axes breaks grid alignment.
    for (int j = 1; j < d; ++j) {
      const std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(c) * 7919ULL +
                                                 static_cast<std::uint64_t>(j)));
      origin[static_cast<size_t>(j)] = spacing * static_cast<double>(h % 7);
    }
    emit_grid_cells(out, d, side, n_c, spacing, amp, seed,
                    origin, static_cast<std::uint64_t>(emitted));
    emitted += n_c;
  }
  return out;
}

void validate_disjoint(const BallSet& balls) {
  if (balls.size() < 2) return;
  const PairDistance closest = kernels::min_pairwise_distance(balls);
  const double dist = std::sqrt(closest.dist2);
  if (dist <= 2.0 - kDisjointSlack)
    throw DisjointnessError(closest.a, closest.b, dist);
}

BallSet load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);

  std::string line;
  int line_no = 0;
  int d = -1, n = -1;
  BallSet out;
  int seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    if (d < 0) {
      if (!(ss >> d >> n) || d < 1 || n < 0)
        throw ParseError(line_no, "expected header 'd n'");
      out = BallSet(d);
      out.coords.reserve(static_cast<size_t>(n) * d);
      continue;
    }
    std::vector<double> c(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
      if (!(ss >> c[static_cast<size_t>(j)]))
        throw ParseError(line_no, "expected " + std::to_string(d) + " coordinates");
      if (!std::isfinite(c[static_cast<size_t>(j)]))
        throw ParseError(line_no, "non-finite coordinate");
    }
    double extra;
    if (ss >> extra) throw ParseError(line_no, "trailing data after coordinates");
    out.add(c);
    ++seen;
  }
  if (d < 0) throw ParseError(1, "missing header");
  if (seen != n)
    throw ParseError(line_no, "header promised " + std::to_string(n) +
                                  " centers, found " + std::to_string(seen));
  validate_disjoint(out);
  return out;
}

void save_instance(const BallSet& balls, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << balls.dim << ' ' << balls.size() << '\n';
  char buf[64];
  for (int i = 0; i < balls.size(); ++i) {
    auto c = balls.center(i);
    for (int j = 0; j < balls.dim; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", c[static_cast<size_t>(j)]);
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ballsep
