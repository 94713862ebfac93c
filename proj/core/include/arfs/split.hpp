#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "arfs/dataset.hpp"

namespace arfs {

enum class Criterion { gini, variance };

Criterion criterion_for(Task task) noexcept;

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;   // rows with x <= threshold go left
  double gain = 0.0;        // impurity decrease relative to the scanned node
  std::size_t left_count = 0;
};

/// Exhaustive CART split search over `rows` of `ds`.
///
/// Thresholds sit at midpoints between consecutive distinct sorted values.
/// The gain is impurity(parent) - nL/n * impurity(left) - nR/n * impurity(right)
/// with gini impurity (classification) or variance (regression). Returns
/// nullopt when no split with positive gain exists. Ties resolve to the
/// lowest feature index, then the lowest threshold.
std::optional<Split> best_split(const Dataset& ds, std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidates, Criterion criterion,
                                std::size_t min_samples_leaf = 1);

} // namespace arfs
