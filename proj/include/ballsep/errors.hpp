#pragma once

#include <stdexcept>
#include <string>

namespace ballsep {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
  using Error::Error;
};

// rotate_to_general_position exhausted its rotation schedule.
struct GeneralPositionError : Error {
  using Error::Error;
};

struct RankError : Error {
  using Error::Error;
};

struct PermutationError : Error {
  using Error::Error;
};

struct PrimalityError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConditionError : Error {
  using Error::Error;
};

// d*n <= k*b failed.
struct Condition1Violated : ConditionError {
  double lhs, rhs;
  Condition1Violated(double lhs_, double rhs_)
      : ConditionError("condition 1 violated: d*n = " + std::to_string(lhs_) +
                       " > k*b = " + std::to_string(rhs_)),
        lhs(lhs_),
        rhs(rhs_) {}
};

// t > 2 failed.
struct Condition2Violated : ConditionError {
  double t;
  explicit Condition2Violated(double t_)
      : ConditionError("condition 2 violated: t = " + std::to_string(t_) +
                       " <= 2"),
        t(t_) {}
};

struct WidthError : Error {
  using Error::Error;
};

struct SpacingError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what)
      : Error("parse error at line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct DisjointnessError : Error {
  int id_a, id_b;
  double distance;
  DisjointnessError(int a, int b, double dist)
      : Error("balls " + std::to_string(a) + " and " + std::to_string(b) +
              " overlap: center distance " + std::to_string(dist) + " <= 2"),
        id_a(a),
        id_b(b),
        distance(dist) {}
};

// Too few lines to subdivide a slab; caller falls back to the brute finish.
struct DegenerateError : Error {
  using Error::Error;
};

// An iteration neither discarded a line nor shrank the slab.
struct NoProgressError : Error {
  using Error::Error;
};

}  // namespace ballsep
