#include "ballsep/select.hpp"

#include <algorithm>

namespace ballsep {

namespace {

// Insertion sort for small subranges.
void small_sort(Ranked* v, int lo, int hi) {
  for (int i = lo + 1; i < hi; ++i) {
    Ranked key = v[i];
    int j = i - 1;
    while (j >= lo && key < v[j]) {
      v[j + 1] = v[j];
      --j;
    }
    v[j + 1] = key;
  }
}

// Median-of-medians select on v[lo, hi), 0-based k relative to lo.
Ranked mom_select(Ranked* v, int lo, int hi, int k) {
  for (;;) {
    const int n = hi - lo;
    if (n <= 10) {
      small_sort(v, lo, hi);
      return v[lo + k];
    }

    // Median of each group of 5 moved to the front of the range.
    int num_groups = 0;
    for (int g = lo; g + 5 <= hi; g += 5) {
      small_sort(v, g, g + 5);
      std::swap(v[lo + num_groups], v[g + 2]);
      ++num_groups;
    }
    const Ranked pivot = mom_select(v, lo, lo + num_groups, num_groups / 2);

    // Three-way partition around the pivot.
    int lt = lo, i = lo, gt = hi;
    while (i < gt) {
      if (v[i] < pivot) {
        std::swap(v[lt++], v[i++]);
      } else if (pivot < v[i]) {
        std::swap(v[i], v[--gt]);
      } else {
        ++i;
      }
    }
    const int below = lt - lo;
    const int equal = gt - lt;
    if (k < below) {
      hi = lt;
    } else if (k < below + equal) {
      return pivot;
    } else {
      k -= below + equal;
      lo = gt;
    }
  }
}

}  // namespace

Ranked rank_select(std::vector<Ranked> items, int k) {
  const int n = static_cast<int>(items.size());
  if (n < 1) throw RankError("rank_select on empty input");
  if (k < 1 || k > n)
    throw RankError("rank " + std::to_string(k) + " out of range [1, " +
                    std::to_string(n) + "]");
  return mom_select(items.data(), 0, n, k - 1);
}

Ranked rank_select(std::span<const double> values, int k) {
  std::vector<Ranked> items(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    items[i] = Ranked{values[i], static_cast<int>(i)};
  return rank_select(std::move(items), k);
}

long long count_inversions_labeled(std::vector<int>& seq, std::vector<int>& tmp) {
  const size_t n = seq.size();
  tmp.resize(n);
  long long count = 0;
  // Bottom-up merge sort, counting cross-pairs at each merge.
  for (size_t width = 1; width < n; width *= 2) {
    for (size_t lo = 0; lo + width < n; lo += 2 * width) {
      const size_t mid = lo + width;
      const size_t hi = std::min(lo + 2 * width, n);
      size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (seq[a] <= seq[b]) {
          tmp[out++] = seq[a++];
        } else {
          count += static_cast<long long>(mid - a);
          tmp[out++] = seq[b++];
        }
      }
      while (a < mid) tmp[out++] = seq[a++];
      while (b < hi) tmp[out++] = seq[b++];
      std::copy(tmp.begin() + static_cast<long>(lo), tmp.begin() + static_cast<long>(hi),
                seq.begin() + static_cast<long>(lo));
    }
  }
  return count;
}

long long count_inversions(const std::vector<int>& perm_a,
                           const std::vector<int>& perm_b) {
  if (perm_a.size() != perm_b.size())
    throw PermutationError("permutations have different lengths");

  // Position of each id in perm_a; also validates that perm_a has no repeats.
  std::vector<std::pair<int, int>> pos_a(perm_a.size());
  for (size_t i = 0; i < perm_a.size(); ++i)
    pos_a[i] = {perm_a[i], static_cast<int>(i)};
  std::sort(pos_a.begin(), pos_a.end());
  for (size_t i = 0; i + 1 < pos_a.size(); ++i)
    if (pos_a[i].first == pos_a[i + 1].first)
      throw PermutationError("repeated id in first permutation");

  std::vector<int> labeled(perm_b.size());
  for (size_t i = 0; i < perm_b.size(); ++i) {
    const auto it = std::lower_bound(pos_a.begin(), pos_a.end(),
                                     std::pair<int, int>{perm_b[i], -1});
    if (it == pos_a.end() || it->first != perm_b[i])
      throw PermutationError("id " + std::to_string(perm_b[i]) +
                             " missing from first permutation");
    labeled[i] = it->second;
  }
  // Repeats in perm_b would leave some perm_a id unused; lengths being equal,
  // detecting a duplicate label suffices.
  {
    std::vector<int> check = labeled;
    std::sort(check.begin(), check.end());
    for (size_t i = 0; i + 1 < check.size(); ++i)
      if (check[i] == check[i + 1])
        throw PermutationError("repeated id in second permutation");
  }

  std::vector<int> tmp;
  return count_inversions_labeled(labeled, tmp);
}

}  // namespace ballsep
