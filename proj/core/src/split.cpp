#include "arfs/split.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "arfs/error.hpp"
#include "split_kernel.hpp"

namespace arfs {

Criterion criterion_for(Task task) noexcept {
  return task == Task::classification ? Criterion::gini : Criterion::variance;
}

std::optional<Split> best_split(const Dataset& ds, std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidates, Criterion criterion,
                                std::size_t min_samples_leaf) {
  if (rows.size() < 2) return std::nullopt;
  const auto y = ds.target();

  double total = 0.0;
  double total_sq = 0.0;
  for (const auto r : rows) {
    total += y[r];
    total_sq += y[r] * y[r];
  }
  const double min_gain = detail::gain_tolerance(total_sq);
  const double scale = detail::criterion_scale(criterion);

  std::vector<std::size_t> features(candidates.begin(), candidates.end());
  std::sort(features.begin(), features.end());

  std::optional<Split> best;
  double best_raw = min_gain;
  std::vector<std::size_t> order(rows.begin(), rows.end());
  std::vector<double> values(rows.size());
  for (const auto f : features) {
    const auto col = ds.column(f);
    std::copy(rows.begin(), rows.end(), order.begin());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) values[k] = col[order[k]];

    const auto scan = detail::scan_sorted(values.data(), order.data(), order.size(), y.data(),
                                          total, best_raw, min_gain, min_samples_leaf, scale);
    if (scan.found && scan.raw_gain > best_raw) {
      best_raw = scan.raw_gain + min_gain;
      best = Split{f, scan.threshold, scan.raw_gain / static_cast<double>(rows.size()),
                   scan.left_count};
    }
  }
  return best;
}

} // namespace arfs
