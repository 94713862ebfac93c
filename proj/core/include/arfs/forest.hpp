#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/random.hpp"
#include "arfs/split.hpp"

namespace arfs {

struct ForestParams {
  std::size_t n_trees = 100;
  double feature_fraction = 1.0;  // per-tree share of features, rounded up
  std::size_t num_leaves = 32;
  std::size_t max_depth = 5;
  double bagging_fraction = 0.632; // per-tree subsample, without replacement
  std::size_t min_samples_leaf = 1;

  /// Throws InvalidArgument when a limit is zero or a fraction leaves (0, 1].
  void validate() const;
  /// ceil(feature_fraction * d), at least 1.
  std::size_t features_per_tree(std::size_t d) const;
};

/// Node of a flattened tree. Internal nodes have feature >= 0 and two children.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  /// Count-weighted impurity decrease: n_node / n_tree * (impurity decrease).
  double gain = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0; // class-1 probability or mean target
  std::size_t count = 0;
  std::size_t depth = 0;

  bool is_leaf() const noexcept { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;       // nodes[0] is the root
  std::vector<std::size_t> features; // per-tree feature subset, ascending

  double predict_row(std::span<const double> row) const;
  std::size_t leaf_count() const;
  std::size_t depth() const;
};

struct ImportanceVector {
  std::vector<double> values;

  double operator[](std::size_t j) const { return values[j]; }
  std::size_t size() const noexcept { return values.size(); }
};

class Forest {
public:
  Forest(ForestParams params, Task task, std::size_t features, std::vector<Tree> trees);

  const ForestParams& params() const noexcept { return params_; }
  Task task() const noexcept { return task_; }
  std::size_t features() const noexcept { return features_; }
  const std::vector<Tree>& trees() const noexcept { return trees_; }

  /// Majority vote (classification) or mean of tree predictions (regression).
  double predict_row(std::span<const double> row) const;
  std::vector<double> predict(const Dataset& ds) const;

  /// Accuracy for classification, negative mean absolute error for regression.
  /// Higher is better in both cases.
  double score(const Dataset& ds) const;
  /// Mean tree output per row (class-1 probability or regression mean).
  std::vector<double> predict_mean(const Dataset& ds) const;
  /// Loss-based score: 1 - mean |p - y| on the averaged class-1 probability
  /// (classification) or -mean |ŷ - y| (regression). Unlike accuracy it
  /// moves with every change in the forest's confidence, which the
  /// loss-comparison test relies on.
  double loss_score(const Dataset& ds) const;

  /// Per-feature split gains summed over the forest and divided by n_trees.
  ImportanceVector importance_gain() const;

private:
  ForestParams params_;
  Task task_;
  std::size_t features_;
  std::vector<Tree> trees_;
};

/// Grows params.n_trees best-first CART trees. Tree t draws from its own
/// substream derived from one seed taken from `rng`, so the result does not
/// depend on the thread count.
Forest fit_forest(const ForestParams& params, const Dataset& ds, Rng& rng);

/// Score of the best constant predictor (majority class / median), used
/// when a model must be evaluated on an empty feature set.
double constant_model_score(const Dataset& ds);
/// loss_score of a forest without splits, which predicts mean(y)
/// (classification) or the median (regression) for every row.
double constant_model_loss_score(const Dataset& ds);

} // namespace arfs
