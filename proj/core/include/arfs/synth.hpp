#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/random.hpp"

namespace arfs {

/// Relevance labels of a generated dataset. The three sets partition
/// {0, ..., d-1}.
struct GroundTruth {
  FeatureIndexSet strong;
  FeatureIndexSet weak;
  FeatureIndexSet irrelevant;

  std::size_t features() const noexcept { return strong.size() + weak.size() + irrelevant.size(); }
  FeatureIndexSet relevant() const { return strong.unite(weak); }
  /// Throws InvalidArgument unless the sets are disjoint and cover 0..d-1.
  void validate() const;
};

/// Hyperplane-labelled data: strong features carry nonzero prototype weight,
/// weak features are affine copies of one removed latent feature. Labels
/// come from the noise-free latent values.
struct LinearSpec {
  std::size_t n = 0;
  std::size_t n_strong = 0;
  std::size_t n_weak = 0;
  std::size_t n_irrelevant = 0;
  double noise = 0.05; // sd of measurement noise added to every column after labelling

  void validate() const;
};

/// Clustered data that no single hyperplane separates.
struct NonlinearSpec {
  std::size_t n = 500;
  std::size_t n_features = 0;
  std::size_t n_strel = 0;
  std::size_t n_redundant = 0;
  std::size_t clusters_per_class = 2;
  double class_sep = 1.0;
  double noise = 0.05; // sd of measurement noise added to every column

  void validate() const;
  /// Latent informative dimensions turned into redundant groups: ceil(n_redundant / 5).
  std::size_t redundant_groups() const noexcept { return (n_redundant + 4) / 5; }
};

struct SyntheticData {
  Dataset data;
  GroundTruth truth;
};

SyntheticData gen_linear(const LinearSpec& spec, Rng& rng);
SyntheticData gen_nonlinear(const NonlinearSpec& spec, Rng& rng);

using PresetSpec = std::variant<LinearSpec, NonlinearSpec>;

/// "Set 1".."Set 8" (linear) and "NL 1".."NL 4" (non-linear). Lookup ignores
/// case and whitespace, so "set1" and "NL 4" both resolve.
PresetSpec preset(const std::string& name);
/// Canonical spelling ("Set 1", "NL 3"); throws InvalidArgument for unknown names.
std::string canonical_preset_name(const std::string& name);
const std::vector<std::string>& preset_names();
bool is_linear(const PresetSpec& spec) noexcept;

SyntheticData generate(const PresetSpec& spec, Rng& rng);

} // namespace arfs
