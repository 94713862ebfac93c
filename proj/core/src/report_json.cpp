#include "arfs/report_json.hpp"

#include "arfs/error.hpp"

namespace arfs {

namespace {

using Json = nlohmann::ordered_json;

Json indices(const FeatureIndexSet& set) { return Json(set.values()); }

Json interval_json(const std::optional<IntervalStatistic>& iv) {
  if (!iv) return Json(nullptr);
  Json out;
  out["mean"] = iv->mean;
  out["sd"] = iv->sd;
  out["n"] = iv->n;
  out["p"] = iv->p;
  out["lower"] = iv->lower;
  out["upper"] = iv->upper;
  return out;
}

FeatureIndexSet index_set(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(std::string("truth JSON lacks array '") + key + "'");
  }
  return FeatureIndexSet(doc.at(key).get<std::vector<std::size_t>>());
}

} // namespace

Json report_to_json(const RelevanceReport& report) {
  Json tests = Json::array();
  for (const auto& t : report.strong_tests) {
    Json row;
    row["feature"] = t.feature;
    row["name"] = report.names.at(t.feature);
    row["is_strong"] = t.is_strong;
    row["reduced_score"] = t.reduced_score;
    tests.push_back(std::move(row));
  }

  Json diag;
  diag["features"] = report.features;
  diag["names"] = report.names;
  diag["all_relevant"] = indices(report.all_relevant);
  diag["minimal"] = indices(report.minimal);
  diag["score_interval"] = interval_json(report.score_interval);
  diag["importance_interval"] = interval_json(report.importance_interval);
  diag["strong_tests"] = std::move(tests);
  diag["importance"] = report.importance;
  diag["boruta_iterations"] = report.boruta_iterations;
  diag["train_score"] = report.train_score;

  Json out;
  out["strong"] = indices(report.strong);
  out["weak"] = indices(report.weak);
  out["irrelevant"] = indices(report.irrelevant);
  out["diagnostics"] = std::move(diag);
  return out;
}

Json truth_to_json(const GroundTruth& truth) {
  Json out;
  out["strong"] = indices(truth.strong);
  out["weak"] = indices(truth.weak);
  out["irrelevant"] = indices(truth.irrelevant);
  return out;
}

GroundTruth truth_from_json(const nlohmann::json& doc) {
  GroundTruth truth{index_set(doc, "strong"), index_set(doc, "weak"),
                    index_set(doc, "irrelevant")};
  truth.validate();
  return truth;
}

Json forest_to_json(const Forest& forest) {
  const auto& p = forest.params();
  Json params;
  params["n_trees"] = p.n_trees;
  params["feature_fraction"] = p.feature_fraction;
  params["num_leaves"] = p.num_leaves;
  params["max_depth"] = p.max_depth;
  params["bagging_fraction"] = p.bagging_fraction;
  params["min_samples_leaf"] = p.min_samples_leaf;

  Json trees = Json::array();
  for (const auto& tree : forest.trees()) {
    Json feature = Json::array(), threshold = Json::array(), gain = Json::array(),
         left = Json::array(), right = Json::array(), value = Json::array(),
         count = Json::array();
    for (const auto& node : tree.nodes) {
      feature.push_back(node.feature);
      threshold.push_back(node.threshold);
      gain.push_back(node.gain);
      left.push_back(node.left);
      right.push_back(node.right);
      value.push_back(node.value);
      count.push_back(node.count);
    }
    Json t;
    t["features"] = tree.features;
    t["feature"] = std::move(feature);
    t["threshold"] = std::move(threshold);
    t["gain"] = std::move(gain);
    t["left"] = std::move(left);
    t["right"] = std::move(right);
    t["value"] = std::move(value);
    t["count"] = std::move(count);
    trees.push_back(std::move(t));
  }

  Json out;
  out["task"] = to_string(forest.task());
  out["features"] = forest.features();
  out["params"] = std::move(params);
  out["importance"] = forest.importance_gain().values;
  out["trees"] = std::move(trees);
  return out;
}

} // namespace arfs
