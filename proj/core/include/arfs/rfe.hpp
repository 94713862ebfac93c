#pragma once

#include <cstddef>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/forest.hpp"
#include "arfs/random.hpp"

namespace arfs {

struct RfeStep {
  FeatureIndexSet features;
  double cv_score = 0.0; // mean held-out score over the folds
};

struct RfeResult {
  FeatureIndexSet selected;
  std::vector<RfeStep> path; // sizes d, d-1, ..., 1
};

/// Recursive feature elimination with the set size chosen by k-fold
/// cross-validation. Each step refits on the full data, drops the feature
/// with the lowest gain importance, and scores the current set on
/// stratified folds. Returns the set with the best mean CV score; ties go to
/// the smallest set.
RfeResult rfe_cv(const ForestParams& params, const Dataset& ds, std::size_t folds, Rng& rng);

} // namespace arfs
