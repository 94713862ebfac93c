#include "arfs/bench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <map>
#include <mutex>

#include "arfs/error.hpp"
#include "arfs/parallel.hpp"
#include "arfs/rfe.hpp"
#include "arfs/synth.hpp"

namespace arfs {

const char* to_string(Method method) noexcept { return method == Method::sq ? "sq" : "rfe"; }

Method parse_method(const std::string& text) {
  std::string key;
  for (const unsigned char ch : text) key.push_back(static_cast<char>(std::tolower(ch)));
  if (key == "sq") return Method::sq;
  if (key == "rfe" || key == "rf-rfe" || key == "rf") return Method::rfe;
  throw InvalidArgument("unknown method '" + text + "' (expected sq or rfe)");
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t preset_index(const std::string& canonical) {
  const auto& names = preset_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), canonical) - names.begin());
}

RunRecord run_method(Method method, const BenchConfig& config, const SyntheticData& sample,
                     std::uint64_t seed) {
  RunRecord record;
  record.method = method;
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(method) + 100);

  if (method == Method::sq) {
    const auto start = Clock::now();
    const auto report = decompose(sample.data, config.pipeline, rng);
    record.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const auto metrics = relevance_metrics(report, sample.truth);
    record.overall = metrics.overall;
    record.strong = metrics.strong;
    record.weak = metrics.weak;
    record.train_accuracy = report.train_score;
    return record;
  }

  const auto start = Clock::now();
  const auto rfe = rfe_cv(config.rfe_forest, sample.data, config.rfe_folds, rng);
  record.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  record.overall = class_metrics(rfe.selected, sample.truth.relevant());
  const auto subset = select_features(sample.data, rfe.selected);
  record.train_accuracy = fit_forest(config.rfe_forest, subset, rng).score(subset);
  return record;
}

struct MeanAccumulator {
  double total = 0.0;
  std::size_t count = 0;
  void add(const std::optional<double>& v) {
    if (!v) return;
    total += *v;
    ++count;
  }
  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return total / static_cast<double>(count);
  }
};

} // namespace

BenchResult run_bench(const BenchConfig& config, const RunCallback& on_run) {
  if (config.repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (config.methods.empty()) throw InvalidArgument("no methods selected");
  if (config.presets.empty()) throw InvalidArgument("no presets selected");
  config.pipeline.validate();

  struct PresetPlan {
    std::string name;
    PresetSpec spec;
    std::uint64_t seed;
  };
  std::vector<PresetPlan> plans;
  for (const auto& raw : config.presets) {
    const auto name = canonical_preset_name(raw);
    auto spec = preset(name);
    if (auto* nl = std::get_if<NonlinearSpec>(&spec)) nl->n = config.nonlinear_n;
    plans.push_back({name, spec, derive_seed(config.seed, preset_index(name))});
  }

  const std::size_t jobs = plans.size() * config.repeats;
  std::vector<std::vector<RunRecord>> per_job(jobs);
  std::mutex emit_mutex;
  parallel_for(jobs, [&](std::size_t job) {
    const auto& plan = plans[job / config.repeats];
    const std::size_t repeat = job % config.repeats;
    const std::uint64_t repeat_seed = derive_seed(plan.seed, repeat + 1);
    Rng data_rng = make_rng(repeat_seed, 0);

    const auto sample = generate(plan.spec, data_rng);

    for (const auto method : config.methods) {
      auto record = run_method(method, config, sample, repeat_seed);
      record.preset = plan.name;
      record.repeat = repeat;
      if (on_run) {
        std::lock_guard lock(emit_mutex);
        on_run(record);
      }
      per_job[job].push_back(std::move(record));
    }
  });

  BenchResult result;
  for (auto& records : per_job) {
    for (auto& r : records) result.runs.push_back(std::move(r));
  }
  result.aggregates = aggregate_runs(result.runs);
  return result;
}

std::vector<AggregateRecord> aggregate_runs(const std::vector<RunRecord>& runs) {
  struct Acc {
    std::size_t runs = 0;
    MeanAccumulator precision, recall, f1, strong_precision, strong_recall, weak_precision,
        weak_recall, train, seconds;
  };
  std::vector<std::pair<std::string, Method>> order;
  std::map<std::pair<std::string, Method>, Acc> acc;
  for (const auto& r : runs) {
    const auto key = std::make_pair(r.preset, r.method);
    if (!acc.contains(key)) order.push_back(key);
    auto& a = acc[key];
    ++a.runs;
    a.precision.add(r.overall.precision);
    a.recall.add(r.overall.recall);
    a.f1.add(r.overall.f1);
    if (r.strong) {
      a.strong_precision.add(r.strong->precision);
      a.strong_recall.add(r.strong->recall);
    }
    if (r.weak) {
      a.weak_precision.add(r.weak->precision);
      a.weak_recall.add(r.weak->recall);
    }
    a.train.add(r.train_accuracy);
    a.seconds.add(r.seconds);
  }

  std::vector<AggregateRecord> out;
  for (const auto& key : order) {
    const auto& a = acc.at(key);
    AggregateRecord g;
    g.preset = key.first;
    g.method = key.second;
    g.runs = a.runs;
    g.precision = a.precision.mean();
    g.recall = a.recall.mean();
    g.f1 = a.f1.mean();
    g.strong_precision = a.strong_precision.mean();
    g.strong_recall = a.strong_recall.mean();
    g.weak_precision = a.weak_precision.mean();
    g.weak_recall = a.weak_recall.mean();
    g.train_accuracy = a.train.mean().value_or(0.0);
    g.seconds = a.seconds.mean().value_or(0.0);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

void put_number(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) put_number(out, *v);
  else out << "NA";
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

} // namespace

void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out, bool include_timing) {
  out << "preset,repeat,method,precision,recall,f1,strong_precision,strong_recall,"
         "weak_precision,weak_recall,train_accuracy,seconds\n";
  const std::optional<double> none;
  for (const auto& r : runs) {
    out << r.preset << ',' << r.repeat << ',' << to_string(r.method) << ',';
    put_optional(out, r.overall.precision);
    out << ',';
    put_optional(out, r.overall.recall);
    out << ',';
    put_optional(out, r.overall.f1);
    out << ',';
    put_optional(out, r.strong ? r.strong->precision : none);
    out << ',';
    put_optional(out, r.strong ? r.strong->recall : none);
    out << ',';
    put_optional(out, r.weak ? r.weak->precision : none);
    out << ',';
    put_optional(out, r.weak ? r.weak->recall : none);
    out << ',';
    put_number(out, r.train_accuracy);
    out << ',';
    put_optional(out, include_timing ? std::optional<double>(r.seconds) : none);
    out << '\n';
  }
}

nlohmann::ordered_json summary_json(const BenchResult& result, bool include_timing) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& g : result.aggregates) {
    nlohmann::ordered_json row;
    row["preset"] = g.preset;
    row["method"] = to_string(g.method);
    row["runs"] = g.runs;
    row["precision"] = optional_json(g.precision);
    row["recall"] = optional_json(g.recall);
    row["f1"] = optional_json(g.f1);
    row["strong_precision"] = optional_json(g.strong_precision);
    row["strong_recall"] = optional_json(g.strong_recall);
    row["weak_precision"] = optional_json(g.weak_precision);
    row["weak_recall"] = optional_json(g.weak_recall);
    row["train_accuracy"] = g.train_accuracy;
    row["seconds"] = include_timing ? nlohmann::ordered_json(g.seconds) : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  return nlohmann::ordered_json{{"aggregates", std::move(rows)}};
}

} // namespace arfs
