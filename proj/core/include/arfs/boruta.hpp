#pragma once

#include <cstddef>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/forest.hpp"
#include "arfs/random.hpp"

namespace arfs {

enum class Decision { tentative, confirmed, rejected };

struct BorutaState {
  std::vector<std::size_t> hits;
  std::vector<Decision> decided;
  std::size_t iteration = 0;
};

struct BorutaResult {
  /// Confirmed features plus tentative ones resolved at max_iter.
  FeatureIndexSet selected;
  BorutaState state;
  /// Features still tentative after the last iteration whose median
  /// importance beat the median maximum shadow importance.
  FeatureIndexSet resolved_tentative;
  /// Shadow columns added in each iteration (one per feature of the dataset).
  std::vector<std::size_t> shadow_counts;
};

/// Boruta all-relevant selection.
///
/// Each iteration fits one forest on the non-rejected real features plus a
/// freshly permuted shadow of every feature. A real feature scores
/// a hit when its gain importance strictly exceeds the largest shadow
/// importance. After each iteration a two-sided binomial test of hits versus
/// Binomial(iteration, 1/2) at level test_level / d confirms (excess hits)
/// or rejects (too few) tentative features.
BorutaResult run_boruta(const ForestParams& params, const Dataset& ds, std::size_t max_iter,
                        double test_level, Rng& rng);

/// Exact two-sided binomial p-value at success probability 1/2: the total
/// mass of outcomes no more likely than `hits`.
double binomial_two_sided_p(std::size_t hits, std::size_t trials);

/// P(X >= hits) for X ~ Binomial(trials, 1/2).
double binomial_upper_tail_p(std::size_t hits, std::size_t trials);

} // namespace arfs
