#include "arfs/rfe.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "arfs/error.hpp"
#include "arfs/parallel.hpp"

namespace arfs {

namespace {

// Fold id per row; classification folds keep class proportions.
std::vector<std::size_t> assign_folds(const Dataset& ds, std::size_t folds, Rng& rng) {
  const std::size_t n = ds.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  if (ds.task() == Task::classification) {
    const auto y = ds.target();
    std::stable_partition(order.begin(), order.end(), [&](std::size_t r) { return y[r] == 0.0; });
  }
  std::vector<std::size_t> fold(n);
  for (std::size_t i = 0; i < n; ++i) fold[order[i]] = i % folds;
  return fold;
}

double cross_validate(const ForestParams& params, const Dataset& ds,
                      const std::vector<std::size_t>& fold, std::size_t folds,
                      std::uint64_t seed) {
  std::vector<double> scores(folds);
  parallel_for(folds, [&](std::size_t k) {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < fold.size(); ++i) (fold[i] == k ? test : train).push_back(i);
    Rng fold_rng = make_rng(seed, k);
    const auto train_ds = take_rows(ds, train);
    const auto test_ds = take_rows(ds, test);
    scores[k] = fit_forest(params, train_ds, fold_rng).score(test_ds);
  });
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(folds);
}

} // namespace

RfeResult rfe_cv(const ForestParams& params, const Dataset& ds, std::size_t folds, Rng& rng) {
  if (folds < 2) throw InvalidArgument("rfe needs at least 2 folds");
  if (ds.rows() < 2 * folds) {
    throw InvalidArgument("n=" + std::to_string(ds.rows()) + " is too small for " +
                          std::to_string(folds) + " folds");
  }
  params.validate();
  const auto fold = assign_folds(ds, folds, rng);
  const std::uint64_t base = draw_seed(rng);

  RfeResult result;
  std::vector<std::size_t> current(ds.features());
  std::iota(current.begin(), current.end(), std::size_t{0});
  for (std::size_t step = 0;; ++step) {
    const FeatureIndexSet features(current);
    const auto subset = select_features(ds, features);
    const double cv = cross_validate(params, subset, fold, folds, derive_seed(base, 2 * step));
    result.path.push_back({features, cv});
    if (current.size() == 1) break;

    Rng fit_rng = make_rng(base, 2 * step + 1);
    const auto importance = fit_forest(params, subset, fit_rng).importance_gain();
    // Lowest importance goes; among ties the highest index goes first.
    std::size_t worst = 0;
    for (std::size_t a = 1; a < importance.size(); ++a) {
      if (importance[a] <= importance[worst]) worst = a;
    }
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  // Path runs from largest to smallest set, so ">=" settles ties on the smaller one.
  const RfeStep* best = &result.path.front();
  for (const auto& step : result.path) {
    if (step.cv_score >= best->cv_score) best = &step;
  }
  result.selected = best->features;
  return result;
}

} // namespace arfs
