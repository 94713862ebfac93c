#include "arfs/metrics.hpp"

#include <string>

#include "arfs/error.hpp"

namespace arfs {

ClassMetrics class_metrics(const FeatureIndexSet& selected, const FeatureIndexSet& truth) {
  ClassMetrics m;
  m.tp = selected.intersect(truth).size();
  m.fp = selected.size() - m.tp;
  m.fn = truth.size() - m.tp;
  if (m.tp + m.fp > 0) m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  if (m.tp + m.fn > 0) m.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  if (m.tp == 0) {
    if (m.fp + m.fn > 0) m.f1 = 0.0;
  } else {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  return m;
}

RelevanceMetrics relevance_metrics(const RelevanceReport& report, const GroundTruth& truth) {
  if (report.features != truth.features()) {
    throw InvalidArgument("report covers " + std::to_string(report.features) +
                          " features, ground truth " + std::to_string(truth.features()));
  }
  return {class_metrics(report.strong.unite(report.weak), truth.relevant()),
          class_metrics(report.strong, truth.strong), class_metrics(report.weak, truth.weak)};
}

} // namespace arfs
