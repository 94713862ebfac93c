#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace arfs {

/// Sorted, duplicate-free set of zero-based feature indices.
class FeatureIndexSet {
public:
  FeatureIndexSet() = default;
  /// Sorts the input; throws InvalidArgument on duplicates.
  explicit FeatureIndexSet(std::vector<std::size_t> indices);
  FeatureIndexSet(std::initializer_list<std::size_t> indices);

  /// {0, 1, ..., d-1}
  static FeatureIndexSet all(std::size_t d);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t j) const;
  std::size_t operator[](std::size_t pos) const { return indices_[pos]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  const std::vector<std::size_t>& values() const noexcept { return indices_; }

  /// Largest index + 1, or 0 when empty.
  std::size_t bound() const noexcept { return indices_.empty() ? 0 : indices_.back() + 1; }

  FeatureIndexSet unite(const FeatureIndexSet& other) const;
  FeatureIndexSet intersect(const FeatureIndexSet& other) const;
  FeatureIndexSet minus(const FeatureIndexSet& other) const;

  friend bool operator==(const FeatureIndexSet&, const FeatureIndexSet&) = default;

private:
  std::vector<std::size_t> indices_;
};

} // namespace arfs
