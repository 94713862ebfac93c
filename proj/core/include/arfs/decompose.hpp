#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/forest.hpp"
#include "arfs/random.hpp"
#include "arfs/stats.hpp"

namespace arfs {

struct PipelineConfig {
  ForestParams boruta_forest = with_fraction(0.1, 100, 30);
  ForestParams minimal_forest = with_fraction(1.0);
  ForestParams loss_forest = with_fraction(0.8, 300);
  std::size_t alpha = 50;
  double p_value = 1e-6;
  std::size_t boruta_max_iter = 100;
  double boruta_level = 0.05;

  void validate() const;

  static ForestParams with_fraction(double feature_fraction, std::size_t n_trees = 100,
                                    std::size_t min_samples_leaf = 1) {
    ForestParams p;
    p.feature_fraction = feature_fraction;
    p.n_trees = n_trees;
    p.min_samples_leaf = min_samples_leaf;
    return p;
  }
};

struct StrongTest {
  std::size_t feature = 0; // index into the full feature set G
  bool is_strong = false;
  double reduced_score = 0.0; // loss_score of the refit without the feature
};

struct MinimalSet {
  FeatureIndexSet selected;   // indices of the dataset passed in
  ImportanceVector importance; // of the single feature_fraction-1 forest
};

/// Strong / weak / irrelevant split of G plus everything needed to audit it.
struct RelevanceReport {
  std::size_t features = 0;
  std::vector<std::string> names;

  FeatureIndexSet strong;
  FeatureIndexSet weak;
  FeatureIndexSet irrelevant;

  FeatureIndexSet all_relevant; // A, from Boruta
  FeatureIndexSet minimal;      // M ∩ A
  std::optional<IntervalStatistic> score_interval;      // null loss_scores on A (+ shadow)
  std::optional<IntervalStatistic> importance_interval; // null shadow importances on A
  std::vector<StrongTest> strong_tests;                 // one per member of M ∩ A
  std::vector<double> importance;                       // minimal-set importances, 0 outside A
  std::size_t boruta_iterations = 0;
  double train_score = 0.0; // mean training accuracy of the null refits
};

/// Features of `ds` whose gain importance in one forest strictly exceeds
/// `importance_upper`. An empty result is legal.
MinimalSet minimal_set(const ForestParams& params, const Dataset& ds, double importance_upper,
                       Rng& rng);

/// Refits without feature `j` of `ds` and flags it strong when the reduced
/// training loss_score falls below the null interval's lower bound.
StrongTest strong_test(const Dataset& ds, std::size_t j, const IntervalStatistic& score_interval,
                       const ForestParams& params, Rng& rng);

/// Boruta for A, null intervals on the A-restricted data, the minimal set M
/// from importance thresholding, one strong test per member of M, then
/// W = A \ S and I = G \ A.
RelevanceReport decompose(const Dataset& ds, const PipelineConfig& config, Rng& rng);

} // namespace arfs
