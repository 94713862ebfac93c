#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arfs/bench.hpp"
#include "arfs/csv.hpp"
#include "arfs/decompose.hpp"
#include "arfs/error.hpp"
#include "arfs/parallel.hpp"
#include "arfs/report_json.hpp"
#include "arfs/synth.hpp"

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw arfs::Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw arfs::Error("failed writing '" + path.string() + "'");
}

std::string join(const arfs::FeatureIndexSet& set, const std::vector<std::string>& names) {
  std::string out;
  for (const auto j : set) {
    if (!out.empty()) out += ", ";
    out += names[j];
  }
  return out.empty() ? "-" : out;
}

void print_table(const arfs::RelevanceReport& report) {
  std::printf("%-24s %-11s %12s %14s\n", "feature", "class", "importance", "reduced_score");
  for (std::size_t j = 0; j < report.features; ++j) {
    const char* cls = report.strong.contains(j) ? "strong"
                      : report.weak.contains(j) ? "weak"
                                                : "irrelevant";
    std::string reduced = "";
    for (const auto& t : report.strong_tests) {
      if (t.feature == j) reduced = std::to_string(t.reduced_score);
    }
    std::printf("%-24s %-11s %12.6g %14s\n", report.names[j].c_str(), cls, report.importance[j],
                reduced.c_str());
  }
  if (report.score_interval) {
    std::printf("score interval [%.6g, %.6g], training score %.6g\n", report.score_interval->lower,
                report.score_interval->upper, report.train_score);
  }
  std::printf("strong: %s\nweak: %s\n", join(report.strong, report.names).c_str(),
              join(report.weak, report.names).c_str());
}

void print_summary(const arfs::BenchResult& result) {
  const auto cell = [](const std::optional<double>& v) {
    char buf[16];
    if (!v) return std::string("NA");
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    return std::string(buf);
  };
  std::printf("%-7s %-6s %6s %6s %6s %6s %6s %6s %6s %9s\n", "preset", "method", "prec", "recall",
              "f1", "S-prec", "S-rec", "W-prec", "W-rec", "train_acc");
  for (const auto& g : result.aggregates) {
    std::printf("%-7s %-6s %6s %6s %6s %6s %6s %6s %6s %9.3f\n", g.preset.c_str(),
                arfs::to_string(g.method), cell(g.precision).c_str(), cell(g.recall).c_str(),
                cell(g.f1).c_str(), cell(g.strong_precision).c_str(),
                cell(g.strong_recall).c_str(), cell(g.weak_precision).c_str(),
                cell(g.weak_recall).c_str(), g.train_accuracy);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-relevant feature selection with strong/weak decomposition"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic preset dataset and its ground truth");
  std::string gen_preset;
  fs::path gen_out, gen_truth;
  std::uint64_t gen_seed = 0;
  std::optional<std::size_t> gen_n;
  gen->add_option("--preset", gen_preset, "Preset name, e.g. \"Set 1\" or NL3")->required();
  gen->add_option("--out", gen_out, "Output CSV")->required();
  gen->add_option("--truth", gen_truth, "Ground-truth JSON sidecar");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--n", gen_n, "Override the sample count");

  // select
  auto* sel = app.add_subcommand("select", "Decompose the features of a CSV into strong/weak/irrelevant");
  fs::path sel_input, sel_out, sel_dump;
  std::string sel_target = "y", sel_task = "classification";
  std::uint64_t sel_seed = 0;
  bool sel_table = false;
  arfs::PipelineConfig config;
  sel->add_option("--input", sel_input, "Input CSV")->required()->check(CLI::ExistingFile);
  sel->add_option("--target", sel_target, "Target column name");
  sel->add_option("--task", sel_task, "classification or regression");
  sel->add_option("--out", sel_out, "Output JSON report")->required();
  sel->add_option("--alpha", config.alpha, "Null refits per interval");
  sel->add_option("--p-value", config.p_value, "Two-sided interval level");
  sel->add_option("--boruta-max-iter", config.boruta_max_iter, "Boruta iterations");
  sel->add_option("--boruta-level", config.boruta_level, "Boruta test level before correction");
  sel->add_option("--seed", sel_seed, "Random seed");
  sel->add_option("--dump-forest", sel_dump, "Also fit one full forest and dump it as JSON");
  sel->add_flag("--table", sel_table, "Print a table to stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "Run preset benchmarks and write per-run CSV and summary JSON");
  std::vector<std::string> bench_presets;
  std::vector<std::string> bench_methods{"sq"};
  fs::path bench_dir = "bench_out";
  arfs::BenchConfig bench_config;
  bool no_timing = false, quiet = false;
  bench->add_option("--presets", bench_presets, "Comma-separated presets (default: all)")
      ->delimiter(',');
  bench->add_option("--repeats", bench_config.repeats, "Repeats per preset");
  bench->add_option("--methods", bench_methods, "sq, rfe")->delimiter(',');
  bench->add_option("--out-dir", bench_dir, "Output directory");
  bench->add_option("--seed", bench_config.seed, "Master seed");
  bench->add_option("--folds", bench_config.rfe_folds, "RFE cross-validation folds");
  bench->add_option("--nl-n", bench_config.nonlinear_n, "Samples per non-linear dataset");
  bench->add_option("--alpha", bench_config.pipeline.alpha, "Null refits per interval");
  bench->add_flag("--no-timing", no_timing, "Write NA for seconds (byte-stable output)");
  bench->add_flag("--quiet", quiet, "No per-run progress on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    arfs::set_thread_count(threads);

    if (*gen) {
      auto spec = arfs::preset(gen_preset);
      if (gen_n) std::visit([&](auto& s) { s.n = *gen_n; }, spec);
      arfs::Rng rng(gen_seed);
      const auto data = arfs::generate(spec, rng);
      arfs::write_csv(data.data, gen_out);
      if (!gen_truth.empty()) write_text(gen_truth, arfs::truth_to_json(data.truth).dump(2) + "\n");
      return 0;
    }

    if (*sel) {
      const auto ds = arfs::load_csv(sel_input, sel_target, arfs::parse_task(sel_task));
      arfs::Rng rng(sel_seed);
      const auto report = arfs::decompose(ds, config, rng);
      write_text(sel_out, arfs::report_to_json(report).dump(2) + "\n");
      if (!sel_dump.empty()) {
        arfs::Rng forest_rng = arfs::make_rng(sel_seed, 1000);
        const auto forest = arfs::fit_forest(config.minimal_forest, ds, forest_rng);
        write_text(sel_dump, arfs::forest_to_json(forest).dump() + "\n");
      }
      if (sel_table) print_table(report);
      return 0;
    }

    if (*bench) {
      bench_config.presets = bench_presets.empty() ? arfs::preset_names() : bench_presets;
      bench_config.methods.clear();
      for (const auto& m : bench_methods) bench_config.methods.push_back(arfs::parse_method(m));
      const arfs::RunCallback progress = [&](const arfs::RunRecord& r) {
        if (quiet) return;
        std::fprintf(stderr, "%s #%zu %s f1=%s %.1fs\n", r.preset.c_str(), r.repeat,
                     arfs::to_string(r.method),
                     r.overall.f1 ? std::to_string(*r.overall.f1).c_str() : "NA", r.seconds);
      };
      const auto result = arfs::run_bench(bench_config, progress);
      fs::create_directories(bench_dir);
      std::ofstream csv(bench_dir / "runs.csv", std::ios::binary);
      if (!csv) throw arfs::Error("cannot write " + (bench_dir / "runs.csv").string());
      arfs::write_runs_csv(result.runs, csv, !no_timing);
      write_text(bench_dir / "summary.json", arfs::summary_json(result, !no_timing).dump(2) + "\n");
      print_summary(result);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
