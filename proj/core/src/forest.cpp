#include "arfs/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "arfs/error.hpp"
#include "arfs/parallel.hpp"
#include "split_kernel.hpp"

namespace arfs {

void ForestParams::validate() const {
  if (n_trees < 1) throw InvalidArgument("n_trees must be at least 1");
  if (num_leaves < 2) throw InvalidArgument("num_leaves must be at least 2");
  if (max_depth < 1) throw InvalidArgument("max_depth must be at least 1");
  if (min_samples_leaf < 1) throw InvalidArgument("min_samples_leaf must be at least 1");
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    throw InvalidArgument("feature_fraction must lie in (0, 1]");
  }
  if (!(bagging_fraction > 0.0 && bagging_fraction <= 1.0)) {
    throw InvalidArgument("bagging_fraction must lie in (0, 1]");
  }
}

std::size_t ForestParams::features_per_tree(std::size_t d) const {
  // The small epsilon keeps e.g. 0.1 * 30 from rounding up to 4.
  const double raw = feature_fraction * static_cast<double>(d);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, d);
}

namespace {

template <class ValueAt>
double traverse(const std::vector<TreeNode>& nodes, ValueAt&& value_at) {
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& node = nodes[id];
    id = static_cast<std::size_t>(value_at(static_cast<std::size_t>(node.feature)) <= node.threshold
                                      ? node.left
                                      : node.right);
  }
  return nodes[id].value;
}

struct TreeSetup {
  std::vector<std::size_t> bag;
  std::vector<std::size_t> features;
};

class TreeBuilder {
public:
  TreeBuilder(const Dataset& ds, const std::vector<std::vector<std::uint32_t>>& presorted,
              const ForestParams& params)
      : ds_(ds), presorted_(presorted), params_(params),
        scale_(detail::criterion_scale(criterion_for(ds.task()))), y_(ds.target().data()) {}

  Tree build(const TreeSetup& setup) {
    prepare(setup);
    Tree tree;
    tree.features = setup.features;

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto r : setup.bag) {
      sum += y_[r];
      sum_sq += y_[r] * y_[r];
    }
    const std::size_t n = setup.bag.size();
    min_gain_ = detail::gain_tolerance(sum_sq);
    n_root_ = static_cast<double>(n);

    tree.nodes.push_back(make_leaf(sum, n, 0));
    std::priority_queue<Pending, std::vector<Pending>, PendingOrder> frontier;
    consider(frontier, 0, 0, n, sum, 0);

    std::size_t leaves = 1;
    while (!frontier.empty() && leaves < params_.num_leaves) {
      const Pending p = frontier.top();
      frontier.pop();
      const std::size_t mid = p.begin + p.scan.left_count;
      const auto [left_sum, right_sum] = partition(p.feature, p.begin, mid, p.end, p.sum);

      const auto depth = tree.nodes[p.node].depth + 1;
      const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.push_back(make_leaf(left_sum, mid - p.begin, depth));
      tree.nodes.push_back(make_leaf(right_sum, p.end - mid, depth));

      auto& node = tree.nodes[p.node];
      node.feature = static_cast<std::int32_t>(setup.features[p.feature]);
      node.threshold = p.scan.threshold;
      node.gain = p.scan.raw_gain / n_root_;
      node.left = left_id;
      node.right = left_id + 1;
      ++leaves;

      consider(frontier, static_cast<std::size_t>(left_id), p.begin, mid, left_sum, depth);
      consider(frontier, static_cast<std::size_t>(left_id) + 1, mid, p.end, right_sum, depth);
    }
    return tree;
  }

private:
  struct Pending {
    std::size_t node;
    std::size_t begin;
    std::size_t end;
    double sum;
    std::size_t feature; // local index into the tree's feature subset
    detail::ScanResult scan;
  };

  // Highest gain first; equal gains split in creation order.
  struct PendingOrder {
    bool operator()(const Pending& a, const Pending& b) const {
      if (a.scan.raw_gain != b.scan.raw_gain) return a.scan.raw_gain < b.scan.raw_gain;
      return a.node > b.node;
    }
  };

  TreeNode make_leaf(double sum, std::size_t count, std::size_t depth) const {
    TreeNode leaf;
    leaf.value = sum / static_cast<double>(count);
    leaf.count = count;
    leaf.depth = depth;
    return leaf;
  }

  void prepare(const TreeSetup& setup) {
    const std::size_t n = ds_.rows();
    in_bag_.assign(n, 0);
    for (const auto r : setup.bag) in_bag_[r] = 1;
    goes_left_.assign(n, 0);

    const std::size_t k = setup.features.size();
    const std::size_t m = setup.bag.size();
    values_.resize(k);
    rows_.resize(k);
    for (std::size_t a = 0; a < k; ++a) {
      const auto col = ds_.column(setup.features[a]);
      const auto& order = presorted_[setup.features[a]];
      values_[a].resize(m);
      rows_[a].resize(m);
      std::size_t w = 0;
      for (const auto r : order) {
        if (!in_bag_[r]) continue;
        values_[a][w] = col[r];
        rows_[a][w] = r;
        ++w;
      }
    }
    tmp_values_.resize(m);
    tmp_rows_.resize(m);
  }

  void consider(auto& frontier, std::size_t node, std::size_t begin, std::size_t end, double sum,
                std::size_t depth) {
    if (depth >= params_.max_depth) return;
    const std::size_t count = end - begin;
    if (count < 2 * params_.min_samples_leaf || count < 2) return;

    Pending best{node, begin, end, sum, 0, {}};
    double best_gain = min_gain_;
    for (std::size_t a = 0; a < values_.size(); ++a) {
      const auto scan =
          detail::scan_sorted(values_[a].data() + begin, rows_[a].data() + begin, count, y_, sum,
                              best_gain, min_gain_, params_.min_samples_leaf, scale_);
      if (scan.found && scan.raw_gain > best_gain) {
        best_gain = scan.raw_gain + min_gain_;
        best.feature = a;
        best.scan = scan;
      }
    }
    if (best.scan.found) frontier.push(best);
  }

  // Stable partition of every feature's [begin, end) segment by the chosen
  // split; afterwards both children own contiguous, still-sorted segments.
  std::pair<double, double> partition(std::size_t feature, std::size_t begin, std::size_t mid,
                                      std::size_t end, double sum) {
    double left_sum = 0.0;
    const auto& split_rows = rows_[feature];
    for (std::size_t i = begin; i < mid; ++i) {
      goes_left_[split_rows[i]] = 1;
      left_sum += y_[split_rows[i]];
    }
    for (std::size_t i = mid; i < end; ++i) goes_left_[split_rows[i]] = 0;

    for (std::size_t a = 0; a < values_.size(); ++a) {
      if (a == feature) continue;
      auto& vals = values_[a];
      auto& rows = rows_[a];
      std::size_t w = begin;
      std::size_t t = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto r = rows[i];
        if (goes_left_[r]) {
          vals[w] = vals[i];
          rows[w] = r;
          ++w;
        } else {
          tmp_values_[t] = vals[i];
          tmp_rows_[t] = r;
          ++t;
        }
      }
      std::copy_n(tmp_values_.begin(), t, vals.begin() + static_cast<std::ptrdiff_t>(w));
      std::copy_n(tmp_rows_.begin(), t, rows.begin() + static_cast<std::ptrdiff_t>(w));
    }
    return {left_sum, sum - left_sum};
  }

  const Dataset& ds_;
  const std::vector<std::vector<std::uint32_t>>& presorted_;
  const ForestParams& params_;
  double scale_;
  const double* y_;
  double min_gain_ = 0.0;
  double n_root_ = 1.0;

  std::vector<std::uint8_t> in_bag_;
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<double> tmp_values_;
  std::vector<std::uint32_t> tmp_rows_;
};

} // namespace

double Tree::predict_row(std::span<const double> row) const {
  return traverse(nodes, [&](std::size_t f) { return row[f]; });
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t Tree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

Forest::Forest(ForestParams params, Task task, std::size_t features, std::vector<Tree> trees)
    : params_(params), task_(task), features_(features), trees_(std::move(trees)) {
  for (const auto& tree : trees_) {
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf() && static_cast<std::size_t>(node.feature) >= features_) {
        throw InvalidArgument("tree splits on feature " + std::to_string(node.feature) +
                              " but the forest has " + std::to_string(features_));
      }
    }
  }
}

namespace {

template <class ValueAt>
double forest_predict(const std::vector<Tree>& trees, Task task, ValueAt&& value_at) {
  if (task == Task::regression) {
    double total = 0.0;
    for (const auto& t : trees) total += traverse(t.nodes, value_at);
    return total / static_cast<double>(trees.size());
  }
  std::size_t ones = 0;
  std::size_t zeros = 0;
  double prob_sum = 0.0;
  for (const auto& t : trees) {
    const double p = traverse(t.nodes, value_at);
    prob_sum += p;
    if (p > 0.5) ++ones;
    else if (p < 0.5) ++zeros;
  }
  if (ones != zeros) return ones > zeros ? 1.0 : 0.0;
  return prob_sum > 0.5 * static_cast<double>(trees.size()) ? 1.0 : 0.0;
}

} // namespace

double Forest::predict_row(std::span<const double> row) const {
  if (row.size() != features_) {
    throw InvalidArgument("row has " + std::to_string(row.size()) + " values, forest expects " +
                          std::to_string(features_));
  }
  return forest_predict(trees_, task_, [&](std::size_t f) { return row[f]; });
}

std::vector<double> Forest::predict(const Dataset& ds) const {
  if (ds.features() != features_) {
    throw InvalidArgument("dataset has " + std::to_string(ds.features()) +
                          " features, forest expects " + std::to_string(features_));
  }
  std::vector<const double*> cols(features_);
  for (std::size_t j = 0; j < features_; ++j) cols[j] = ds.column(j).data();
  std::vector<double> out(ds.rows());
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    out[i] = forest_predict(trees_, task_, [&](std::size_t f) { return cols[f][i]; });
  }
  return out;
}

double Forest::score(const Dataset& ds) const {
  if (ds.task() != task_) throw InvalidArgument("dataset task does not match the forest");
  const auto pred = predict(ds);
  const auto y = ds.target();
  const auto n = static_cast<double>(ds.rows());
  if (task_ == Task::classification) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == y[i] ? 1 : 0;
    return static_cast<double>(correct) / n;
  }
  double abs_err = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) abs_err += std::abs(pred[i] - y[i]);
  return -abs_err / n;
}

std::vector<double> Forest::predict_mean(const Dataset& ds) const {
  if (ds.features() != features_) {
    throw InvalidArgument("dataset has " + std::to_string(ds.features()) +
                          " features, forest expects " + std::to_string(features_));
  }
  std::vector<const double*> cols(features_);
  for (std::size_t j = 0; j < features_; ++j) cols[j] = ds.column(j).data();
  std::vector<double> out(ds.rows(), 0.0);
  for (const auto& tree : trees_) {
    for (std::size_t i = 0; i < ds.rows(); ++i) {
      out[i] += traverse(tree.nodes, [&](std::size_t f) { return cols[f][i]; });
    }
  }
  for (auto& v : out) v /= static_cast<double>(trees_.size());
  return out;
}

double Forest::loss_score(const Dataset& ds) const {
  if (ds.task() != task_) throw InvalidArgument("dataset task does not match the forest");
  const auto pred = predict_mean(ds);
  const auto y = ds.target();
  double abs_err = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) abs_err += std::abs(pred[i] - y[i]);
  const double mae = abs_err / static_cast<double>(ds.rows());
  return task_ == Task::classification ? 1.0 - mae : -mae;
}

ImportanceVector Forest::importance_gain() const {
  ImportanceVector imp{std::vector<double>(features_, 0.0)};
  for (const auto& tree : trees_) {
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf()) imp.values[static_cast<std::size_t>(node.feature)] += node.gain;
    }
  }
  for (auto& v : imp.values) v /= static_cast<double>(trees_.size());
  return imp;
}

Forest fit_forest(const ForestParams& params, const Dataset& ds, Rng& rng) {
  params.validate();
  const std::size_t n = ds.rows();
  const std::size_t d = ds.features();
  const std::uint64_t base = draw_seed(rng);

  std::vector<TreeSetup> setups;
  setups.reserve(params.n_trees);
  std::vector<std::uint8_t> used(d, 0);
  const std::size_t k = params.features_per_tree(d);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng tree_rng = make_rng(base, t);
    TreeSetup s;
    s.bag = sample_rows(n, params.bagging_fraction, Sampling::without_replacement, tree_rng);
    if (k == d) {
      s.features.resize(d);
      std::iota(s.features.begin(), s.features.end(), std::size_t{0});
    } else {
      std::vector<std::size_t> all(d);
      std::iota(all.begin(), all.end(), std::size_t{0});
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, d - 1);
        std::swap(all[i], all[pick(tree_rng)]);
      }
      all.resize(k);
      std::sort(all.begin(), all.end());
      s.features = std::move(all);
    }
    for (const auto f : s.features) used[f] = 1;
    setups.push_back(std::move(s));
  }

  std::vector<std::vector<std::uint32_t>> presorted(d);
  parallel_for(d, [&](std::size_t f) {
    if (!used[f]) return;
    const auto col = ds.column(f);
    auto& order = presorted[f];
    order.resize(n);
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return col[a] < col[b] || (col[a] == col[b] && a < b);
    });
  });

  std::vector<Tree> trees(params.n_trees);
  parallel_for(params.n_trees, [&](std::size_t t) {
    TreeBuilder builder(ds, presorted, params);
    trees[t] = builder.build(setups[t]);
  });
  return Forest(params, ds.task(), d, std::move(trees));
}

double constant_model_score(const Dataset& ds) {
  const auto y = ds.target();
  const auto n = static_cast<double>(y.size());
  if (ds.task() == Task::classification) {
    const double ones = std::accumulate(y.begin(), y.end(), 0.0);
    return std::max(ones, n - ones) / n;
  }
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size() / 2;
  const double median = sorted.size() % 2 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
  double abs_err = 0.0;
  for (const double v : sorted) abs_err += std::abs(v - median);
  return -abs_err / n;
}

double constant_model_loss_score(const Dataset& ds) {
  if (ds.task() == Task::regression) return constant_model_score(ds);
  const auto y = ds.target();
  const double p = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  // mean |p - y| = p (1 - p) + (1 - p) p
  return 1.0 - 2.0 * p * (1.0 - p);
}

} // namespace arfs
