#pragma once

// Split scan shared by best_split() and the tree builder.

#include <cstddef>
#include <cstdint>

#include "arfs/split.hpp"

namespace arfs::detail {

// Gini impurity of a 0/1 target is 2p(1-p), exactly twice its variance, so
// both criteria reduce to the same sum-of-squares identity, scaled.
inline double criterion_scale(Criterion c) noexcept { return c == Criterion::gini ? 2.0 : 1.0; }

struct ScanResult {
  bool found = false;
  std::size_t left_count = 0;
  double left_sum = 0.0;
  double threshold = 0.0;
  double raw_gain = 0.0; // node_count * impurity decrease
};

inline double split_midpoint(double lo, double hi) noexcept {
  const double mid = lo + (hi - lo) * 0.5;
  return mid < hi ? mid : lo;
}

// Smallest raw gain treated as a real improvement; anything below is
// floating-point residue from the sum-of-squares identity.
inline double gain_tolerance(double sum_sq) noexcept { return 1e-12 * (sum_sq + 1.0); }

// values: ascending; rows: row id for each value; y: targets indexed by row id.
// raw gain = scale * (sL^2/nL + sR^2/nR - s^2/n), the count-weighted impurity decrease.
// A candidate must exceed min_gain; once one is found, later candidates must
// beat it by more than tie_eps, so rounding noise never overturns the
// lowest-threshold tie-break.
template <class RowIndex>
ScanResult scan_sorted(const double* values, const RowIndex* rows, std::size_t count,
                       const double* y, double total_sum, double min_gain, double tie_eps,
                       std::size_t min_leaf, double scale) {
  ScanResult best;
  if (count < 2 * min_leaf || count < 2) return best;
  const double n = static_cast<double>(count);
  const double parent = total_sum * total_sum / n;
  double left_sum = 0.0;
  double best_gain = min_gain;
  for (std::size_t k = 1; k < count; ++k) {
    left_sum += y[rows[k - 1]];
    if (values[k] == values[k - 1]) continue;
    if (k < min_leaf) continue;
    if (count - k < min_leaf) break;
    const double nl = static_cast<double>(k);
    const double nr = n - nl;
    const double right_sum = total_sum - left_sum;
    const double gain = scale * ((left_sum * left_sum / nl + right_sum * right_sum / nr) - parent);
    if (gain > best_gain) {
      best_gain = gain + tie_eps;
      best.found = true;
      best.left_count = k;
      best.left_sum = left_sum;
      best.threshold = split_midpoint(values[k - 1], values[k]);
      best.raw_gain = gain;
    }
  }
  return best;
}

} // namespace arfs::detail
