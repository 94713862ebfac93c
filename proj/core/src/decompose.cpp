#include "arfs/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "arfs/boruta.hpp"
#include "arfs/error.hpp"
#include "arfs/parallel.hpp"

namespace arfs {

void PipelineConfig::validate() const {
  boruta_forest.validate();
  minimal_forest.validate();
  loss_forest.validate();
  if (alpha < 2) throw InvalidArgument("alpha must be at least 2");
  if (!(p_value > 0.0 && p_value < 1.0)) throw InvalidArgument("p-value must lie in (0, 1)");
  if (boruta_max_iter < 10) throw InvalidArgument("boruta max_iter must be at least 10");
  if (!(boruta_level > 0.0 && boruta_level < 1.0)) {
    throw InvalidArgument("boruta level must lie in (0, 1)");
  }
}

MinimalSet minimal_set(const ForestParams& params, const Dataset& ds, double importance_upper,
                       Rng& rng) {
  MinimalSet out;
  out.importance = fit_forest(params, ds, rng).importance_gain();
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < out.importance.size(); ++j) {
    if (out.importance[j] > importance_upper) selected.push_back(j);
  }
  out.selected = FeatureIndexSet(std::move(selected));
  return out;
}

StrongTest strong_test(const Dataset& ds, std::size_t j, const IntervalStatistic& score_interval,
                       const ForestParams& params, Rng& rng) {
  if (j >= ds.features()) throw InvalidArgument("strong test feature out of range");
  StrongTest out;
  out.feature = j;
  if (ds.features() == 1) {
    // Nothing left to fit on: the reduced model has no splits.
    out.reduced_score = constant_model_loss_score(ds);
  } else {
    const auto reduced = drop_feature(ds, j);
    out.reduced_score = fit_forest(params, reduced, rng).loss_score(reduced);
  }
  out.is_strong = out.reduced_score < score_interval.lower;
  return out;
}

namespace {

enum Phase : std::uint64_t {
  boruta_phase = 1,
  score_phase,
  importance_phase,
  minimal_phase,
  strong_phase,
};

} // namespace

RelevanceReport decompose(const Dataset& ds, const PipelineConfig& config, Rng& rng) {
  config.validate();
  const std::uint64_t base = draw_seed(rng);
  const std::size_t d = ds.features();

  RelevanceReport report;
  report.features = d;
  report.names = ds.names();
  report.importance.assign(d, 0.0);

  Rng boruta_rng = make_rng(base, boruta_phase);
  const auto boruta = run_boruta(config.boruta_forest, ds, config.boruta_max_iter,
                                 config.boruta_level, boruta_rng);
  report.all_relevant = boruta.selected;
  report.boruta_iterations = boruta.state.iteration;

  const auto& relevant = report.all_relevant;
  if (relevant.empty()) {
    report.irrelevant = FeatureIndexSet::all(d);
    report.train_score = constant_model_score(ds);
    return report;
  }

  const auto restricted = select_features(ds, relevant);

  Rng score_rng = make_rng(base, score_phase);
  const auto score_null = sample_null(config.loss_forest, restricted, config.alpha, score_rng);
  report.score_interval = prediction_interval(score_null.scores, config.p_value);

  Rng importance_rng = make_rng(base, importance_phase);
  const auto importance_null =
      sample_null(config.minimal_forest, restricted, config.alpha, importance_rng);
  report.importance_interval =
      prediction_interval(importance_null.shadow_importances, config.p_value);

  Rng minimal_rng = make_rng(base, minimal_phase);
  const auto minimal =
      minimal_set(config.minimal_forest, restricted, report.importance_interval->upper, minimal_rng);
  std::vector<std::size_t> minimal_global;
  for (const auto local : minimal.selected) minimal_global.push_back(relevant[local]);
  report.minimal = FeatureIndexSet(std::move(minimal_global)).intersect(relevant);
  for (std::size_t local = 0; local < relevant.size(); ++local) {
    report.importance[relevant[local]] = minimal.importance[local];
  }

  // Local positions (within `restricted`) of the members of M.
  std::vector<std::size_t> to_test;
  for (std::size_t local = 0; local < relevant.size(); ++local) {
    if (report.minimal.contains(relevant[local])) to_test.push_back(local);
  }
  const std::uint64_t strong_base = derive_seed(base, strong_phase);
  report.strong_tests.resize(to_test.size());
  parallel_for(to_test.size(), [&](std::size_t t) {
    Rng test_rng = make_rng(strong_base, relevant[to_test[t]]);
    auto result = strong_test(restricted, to_test[t], *report.score_interval, config.loss_forest,
                              test_rng);
    result.feature = relevant[to_test[t]];
    report.strong_tests[t] = result;
  });

  std::vector<std::size_t> strong;
  for (const auto& test : report.strong_tests) {
    if (test.is_strong) strong.push_back(test.feature);
  }
  report.strong = FeatureIndexSet(std::move(strong));
  report.weak = relevant.minus(report.strong);
  report.irrelevant = FeatureIndexSet::all(d).minus(relevant);
  const auto& acc = score_null.accuracies;
  report.train_score =
      std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(acc.size());
  return report;
}

} // namespace arfs
