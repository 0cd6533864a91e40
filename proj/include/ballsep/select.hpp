#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballsep/errors.hpp"

namespace ballsep {

// Value with a stable identity; ties in value are broken by tag so every
// selection is total and reproducible.
struct Ranked {
  double value = 0.0;
  int tag = 0;

  friend bool operator<(const Ranked& a, const Ranked& b) {
    return a.value < b.value || (a.value == b.value && a.tag < b.tag);
  }
  friend bool operator==(const Ranked& a, const Ranked& b) {
    return a.value == b.value && a.tag == b.tag;
  }
};

// k-th smallest (1-based) by (value, tag), deterministic worst-case linear
// (median of medians, group size 5). Input order is immaterial.
Ranked rank_select(std::vector<Ranked> items, int k);

// Convenience: k-th smallest of `values` with tag = index.
Ranked rank_select(std::span<const double> values, int k);

// Number of unordered pairs that appear in opposite relative order in the two
// permutations; merge-sort counting, O(n log n). Symmetric in its arguments.
long long count_inversions(const std::vector<int>& perm_a,
                           const std::vector<int>& perm_b);

// Inversion count of an integer sequence (used on pre-labeled permutations
// where perm_a is the identity). Destroys `seq`; `tmp` is scratch.
long long count_inversions_labeled(std::vector<int>& seq, std::vector<int>& tmp);

}  // namespace ballsep
