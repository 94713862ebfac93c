#include "arfs/feature_set.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "arfs/error.hpp"

namespace arfs {

FeatureIndexSet::FeatureIndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  const auto dup = std::adjacent_find(indices_.begin(), indices_.end());
  if (dup != indices_.end()) {
    throw InvalidArgument("duplicate feature index " + std::to_string(*dup));
  }
}

FeatureIndexSet::FeatureIndexSet(std::initializer_list<std::size_t> indices)
    : FeatureIndexSet(std::vector<std::size_t>(indices)) {}

FeatureIndexSet FeatureIndexSet::all(std::size_t d) {
  std::vector<std::size_t> v(d);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return FeatureIndexSet(std::move(v));
}

bool FeatureIndexSet::contains(std::size_t j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

FeatureIndexSet FeatureIndexSet::unite(const FeatureIndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return FeatureIndexSet(std::move(out));
}

FeatureIndexSet FeatureIndexSet::intersect(const FeatureIndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return FeatureIndexSet(std::move(out));
}

FeatureIndexSet FeatureIndexSet::minus(const FeatureIndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return FeatureIndexSet(std::move(out));
}

} // namespace arfs
