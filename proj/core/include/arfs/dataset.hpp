#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "arfs/feature_set.hpp"
#include "arfs/random.hpp"

namespace arfs {

enum class Task { classification, regression };

const char* to_string(Task task) noexcept;
/// Accepts "classification" / "regression" (also "clf" / "reg").
Task parse_task(const std::string& text);

/// Immutable n x d feature matrix with a target vector.
///
/// Columns are stored contiguously (column-major) because every consumer
/// works feature-by-feature: split scans, permutations, column selection.
/// Construction validates n >= 2, d >= 1, finite values, matching target
/// length and (for classification) binary 0/1 labels.
class Dataset {
public:
  Dataset(std::vector<std::vector<double>> columns, std::vector<double> target, Task task,
          std::vector<std::string> names = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t features() const noexcept { return names_.size(); }
  Task task() const noexcept { return task_; }

  std::span<const double> column(std::size_t j) const;
  std::span<const double> target() const noexcept { return target_; }
  double at(std::size_t row, std::size_t feature) const { return column(feature)[row]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Copy of the columns, for building derived datasets.
  std::vector<std::vector<double>> columns() const;

private:
  std::size_t rows_ = 0;
  std::vector<double> values_; // feature j occupies [j*rows_, (j+1)*rows_)
  std::vector<double> target_;
  Task task_ = Task::classification;
  std::vector<std::string> names_;
};

/// Uniform random permutation of column j. The dataset is untouched.
std::vector<double> permute_feature(const Dataset& ds, std::size_t j, Rng& rng);

struct ShadowExtension {
  Dataset data;
  std::size_t shadow_index; // always the last column (== original d)
  std::size_t source;       // feature whose permutation was appended
};

/// Appends p(j) for a uniformly drawn j, producing X* = X ∪ p(j).
ShadowExtension extend_with_random_shadow(const Dataset& ds, Rng& rng);

Dataset drop_feature(const Dataset& ds, std::size_t j);
Dataset select_features(const Dataset& ds, const FeatureIndexSet& features);

enum class Sampling { with_replacement, without_replacement };

/// Row indices for a round(fraction * n) sample. Shared by tree bagging and
/// benchmark bootstraps so both follow the same size rule.
std::vector<std::size_t> sample_rows(std::size_t n, double fraction, Sampling mode, Rng& rng);

Dataset bootstrap_rows(const Dataset& ds, double fraction, Sampling mode, Rng& rng);

/// Dataset restricted to the given rows (duplicates allowed).
Dataset take_rows(const Dataset& ds, std::span<const std::size_t> rows);

} // namespace arfs
