#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arfs/decompose.hpp"
#include "arfs/forest.hpp"
#include "arfs/metrics.hpp"

namespace arfs {

enum class Method { sq, rfe };

const char* to_string(Method method) noexcept;
/// "sq" or "rfe" (case-insensitive; "rf-rfe" also accepted).
Method parse_method(const std::string& text);

struct BenchConfig {
  std::vector<std::string> presets;
  std::size_t repeats = 10;
  std::vector<Method> methods{Method::sq};
  std::uint64_t seed = 0;
  PipelineConfig pipeline;
  ForestParams rfe_forest = PipelineConfig::with_fraction(1.0);
  std::size_t rfe_folds = 5;
  std::size_t nonlinear_n = 500;
};

struct RunRecord {
  std::string preset;
  std::size_t repeat = 0;
  Method method = Method::sq;
  ClassMetrics overall;
  std::optional<ClassMetrics> strong; // only methods that split S and W
  std::optional<ClassMetrics> weak;
  double train_accuracy = 0.0;
  double seconds = 0.0; // selection only, excluding data generation
};

struct AggregateRecord {
  std::string preset;
  Method method = Method::sq;
  std::size_t runs = 0;
  // Means over runs where the metric is defined.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> strong_precision;
  std::optional<double> strong_recall;
  std::optional<double> weak_precision;
  std::optional<double> weak_recall;
  double train_accuracy = 0.0;
  double seconds = 0.0;
};

struct BenchResult {
  std::vector<RunRecord> runs;             // preset-major, then repeat, then method
  std::vector<AggregateRecord> aggregates; // one per (preset, method)
};

using RunCallback = std::function<void(const RunRecord&)>;

/// Every repeat draws a fresh dataset from the preset with a seed derived
/// from config.seed, the preset and the repeat index.
BenchResult run_bench(const BenchConfig& config, const RunCallback& on_run = {});

std::vector<AggregateRecord> aggregate_runs(const std::vector<RunRecord>& runs);

/// Per-run CSV. Undefined metrics print as "NA"; with include_timing false
/// the seconds column is "NA" too, so output is byte-stable for a seed.
void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out,
                    bool include_timing = true);

nlohmann::ordered_json summary_json(const BenchResult& result, bool include_timing = true);

} // namespace arfs
