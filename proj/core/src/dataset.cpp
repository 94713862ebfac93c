#include "arfs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arfs/error.hpp"

namespace arfs {

const char* to_string(Task task) noexcept {
  return task == Task::classification ? "classification" : "regression";
}

Task parse_task(const std::string& text) {
  if (text == "classification" || text == "clf") return Task::classification;
  if (text == "regression" || text == "reg") return Task::regression;
  throw InvalidArgument("unknown task '" + text + "' (expected classification or regression)");
}

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<double> target, Task task,
                 std::vector<std::string> names)
    : rows_(target.size()), target_(std::move(target)), task_(task), names_(std::move(names)) {
  if (columns.empty()) throw InvalidArgument("dataset needs at least one feature");
  if (rows_ < 2) throw InvalidArgument("dataset needs at least two rows");
  if (names_.empty()) {
    names_.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) names_.push_back("f" + std::to_string(j));
  }
  if (names_.size() != columns.size()) {
    throw InvalidArgument("got " + std::to_string(names_.size()) + " names for " +
                          std::to_string(columns.size()) + " columns");
  }

  values_.reserve(columns.size() * rows_);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& col = columns[j];
    if (col.size() != rows_) {
      throw InvalidArgument("column '" + names_[j] + "' has " + std::to_string(col.size()) +
                            " rows, target has " + std::to_string(rows_));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!std::isfinite(col[i])) {
        throw InvalidArgument("non-finite value at row " + std::to_string(i) + ", column '" +
                              names_[j] + "'");
      }
    }
    values_.insert(values_.end(), col.begin(), col.end());
  }

  for (std::size_t i = 0; i < rows_; ++i) {
    const double v = target_[i];
    if (!std::isfinite(v)) {
      throw InvalidArgument("non-finite target at row " + std::to_string(i));
    }
    if (task_ == Task::classification && v != 0.0 && v != 1.0) {
      throw InvalidArgument("classification target must be 0 or 1 (row " + std::to_string(i) + ")");
    }
  }
}

std::span<const double> Dataset::column(std::size_t j) const {
  if (j >= features()) {
    throw InvalidArgument("feature index " + std::to_string(j) + " out of range (d=" +
                          std::to_string(features()) + ")");
  }
  return {values_.data() + j * rows_, rows_};
}

std::vector<std::vector<double>> Dataset::columns() const {
  std::vector<std::vector<double>> out;
  out.reserve(features());
  for (std::size_t j = 0; j < features(); ++j) {
    auto c = column(j);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

std::vector<double> permute_feature(const Dataset& ds, std::size_t j, Rng& rng) {
  auto col = ds.column(j);
  std::vector<double> out(col.begin(), col.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

ShadowExtension extend_with_random_shadow(const Dataset& ds, Rng& rng) {
  const std::size_t d = ds.features();
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  const std::size_t source = pick(rng);

  auto columns = ds.columns();
  columns.push_back(permute_feature(ds, source, rng));
  auto names = ds.names();
  names.push_back("shadow_" + ds.names()[source]);

  auto target = ds.target();
  return ShadowExtension{
      Dataset(std::move(columns), {target.begin(), target.end()}, ds.task(), std::move(names)), d,
      source};
}

Dataset drop_feature(const Dataset& ds, std::size_t j) {
  if (j >= ds.features()) {
    throw InvalidArgument("cannot drop feature " + std::to_string(j) + " (d=" +
                          std::to_string(ds.features()) + ")");
  }
  return select_features(ds, FeatureIndexSet::all(ds.features()).minus(FeatureIndexSet{j}));
}

Dataset select_features(const Dataset& ds, const FeatureIndexSet& features) {
  if (features.bound() > ds.features()) {
    throw InvalidArgument("feature index " + std::to_string(features.bound() - 1) +
                          " out of range (d=" + std::to_string(ds.features()) + ")");
  }
  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;
  columns.reserve(features.size());
  for (const std::size_t j : features) {
    auto c = ds.column(j);
    columns.emplace_back(c.begin(), c.end());
    names.push_back(ds.names()[j]);
  }
  auto target = ds.target();
  return Dataset(std::move(columns), {target.begin(), target.end()}, ds.task(), std::move(names));
}

std::vector<std::size_t> sample_rows(std::size_t n, double fraction, Sampling mode, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("sampling fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (count < 1) throw InvalidArgument("sampling fraction selects no rows");

  std::vector<std::size_t> rows;
  if (mode == Sampling::with_replacement) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    rows.resize(count);
    for (auto& r : rows) r = pick(rng);
    return rows;
  }

  // Partial Fisher-Yates: the first `count` slots are a uniform subset in random order.
  rows.resize(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(rows[i], rows[pick(rng)]);
  }
  rows.resize(count);
  return rows;
}

Dataset bootstrap_rows(const Dataset& ds, double fraction, Sampling mode, Rng& rng) {
  const auto rows = sample_rows(ds.rows(), fraction, mode, rng);
  return take_rows(ds, rows);
}

Dataset take_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  for (const auto r : rows) {
    if (r >= ds.rows()) throw InvalidArgument("row index " + std::to_string(r) + " out of range");
  }
  std::vector<std::vector<double>> columns(ds.features());
  for (std::size_t j = 0; j < ds.features(); ++j) {
    auto c = ds.column(j);
    columns[j].reserve(rows.size());
    for (const auto r : rows) columns[j].push_back(c[r]);
  }
  std::vector<double> target;
  target.reserve(rows.size());
  for (const auto r : rows) target.push_back(ds.target()[r]);
  return Dataset(std::move(columns), std::move(target), ds.task(), ds.names());
}

} // namespace arfs
