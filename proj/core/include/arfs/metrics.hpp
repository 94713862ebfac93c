#pragma once

#include <cstddef>
#include <optional>

#include "arfs/decompose.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/synth.hpp"

namespace arfs {

/// Precision / recall / F1 of a selected set against a truth set.
/// A metric whose denominator is zero is std::nullopt ("undefined"), never
/// 0 or 1. F1 is 0 whenever tp = 0 and something was selected or missed;
/// it is undefined only when selection and truth are both empty.
struct ClassMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

ClassMetrics class_metrics(const FeatureIndexSet& selected, const FeatureIndexSet& truth);

struct RelevanceMetrics {
  ClassMetrics overall; // S ∪ W against strong ∪ weak
  ClassMetrics strong;  // S against strong
  ClassMetrics weak;    // W against weak
};

/// Throws InvalidArgument when the report and the truth disagree on d.
RelevanceMetrics relevance_metrics(const RelevanceReport& report, const GroundTruth& truth);

} // namespace arfs
