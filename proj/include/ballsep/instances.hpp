#pragma once

#include <cstdint>
#include <string>

#include "ballsep/geom.hpp"

namespace ballsep {

// splitmix64 finalizer; the jitter source for all generators so instances
// reproduce bit-for-bit across platforms without an RNG dependency.
std::uint64_t mix64(std::uint64_t x);

// side^d centers on a grid with the given spacing (>= 2.2), jittered per
// coordinate by a hash of (seed, cell index, coordinate). The jitter
// amplitude (spacing-2)/2 - 0.05 keeps every pairwise distance >= 2.1.
BallSet jittered_grid(int d, int side, double spacing, std::uint64_t seed);

// Like jittered_grid but stops after the first n cells (row-major) of the
// smallest grid that holds them, so any exact instance size is available.
BallSet jittered_grid_n(int d, int n, double spacing, std::uint64_t seed);

// n centers on the x-axis at the given spacing, dimension 2.
BallSet collinear_row(int n, double spacing);

// n centers split into n_clusters jittered sub-grids placed far apart.
BallSet clusters(int d, int n, int n_clusters, std::uint64_t seed);

// Text instance format: line 1 "d n", then n lines of d coordinates,
// '#' starts a comment. Load validates dimension, finiteness, and pairwise
// disjointness (slack 1e-9). Save prints 17 significant digits, which
// round-trips doubles exactly.
BallSet load_instance(const std::string& path);
void save_instance(const BallSet& balls, const std::string& path);

// Disjointness check shared by load_instance and the tests; throws
// DisjointnessError naming the closest offending pair.
void validate_disjoint(const BallSet& balls);

}  // namespace ballsep
