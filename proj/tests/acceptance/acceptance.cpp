// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   arfs_acceptance [--cli PATH] [--work-dir DIR] [--only N[,N...]]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arfs/bench.hpp"
#include "arfs/decompose.hpp"
#include "arfs/forest.hpp"
#include "arfs/stats.hpp"
#include "arfs/synth.hpp"
#include "unit/oracles.hpp"

using namespace arfs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("NA"); }

struct Options {
  std::filesystem::path cli;
  std::filesystem::path work_dir = std::filesystem::temp_directory_path() / "arfs_acceptance";
  std::set<int> only;
};

// Shared benchmark runs, computed on first use.
struct Runs {
  std::optional<BenchResult> linear_sq;
  std::optional<BenchResult> linear_rfe;
  std::optional<BenchResult> nonlinear;

  const BenchResult& linear() {
    if (!linear_sq) {
      BenchConfig c;
      c.presets = {"Set 1", "Set 2", "Set 3", "Set 4", "Set 5", "Set 6", "Set 7", "Set 8"};
      c.repeats = 10;
      c.methods = {Method::sq};
      linear_sq = run_bench(c);
    }
    return *linear_sq;
  }
  const BenchResult& rfe() {
    if (!linear_rfe) {
      BenchConfig c;
      c.presets = {"Set 6", "Set 7"};
      c.repeats = 10;
      c.methods = {Method::rfe};
      linear_rfe = run_bench(c);
    }
    return *linear_rfe;
  }
  const BenchResult& nl() {
    if (!nonlinear) {
      BenchConfig c;
      c.presets = {"NL 1", "NL 2", "NL 3", "NL 4"};
      c.repeats = 10;
      c.methods = {Method::sq, Method::rfe};
      nonlinear = run_bench(c);
    }
    return *nonlinear;
  }
};

const AggregateRecord& find(const BenchResult& r, const std::string& preset, Method m) {
  for (const auto& a : r.aggregates)
    if (a.preset == preset && a.method == m) return a;
  throw std::runtime_error("missing aggregate " + preset);
}

Outcome linear_f1(Runs& runs) {
  const auto& r = runs.linear();
  Outcome out{true, {}};
  for (const auto& a : r.aggregates) {
    const bool strict = a.preset == "Set 1" || a.preset == "Set 5" || a.preset == "Set 6" ||
                        a.preset == "Set 8";
    const double need = strict ? 0.90 : 0.85;
    const bool ok = a.f1 && *a.f1 >= need;
    out.pass = out.pass && ok;
    out.detail += a.preset + "=" + fmt(a.f1) + (ok ? "" : "(<" + fmt(need, 2) + ")") + " ";
  }
  return out;
}

Outcome linear_strong_weak(Runs& runs) {
  const auto& r = runs.linear();
  double srec = 0.0, wprec = 0.0;
  std::size_t ns = 0, nw = 0;
  for (const auto& run : r.runs) {
    if (run.strong && run.strong->recall) {
      srec += *run.strong->recall;
      ++ns;
    }
    if (run.weak && run.weak->precision) {
      wprec += *run.weak->precision;
      ++nw;
    }
  }
  const double s = ns ? srec / static_cast<double>(ns) : 0.0;
  const double w = nw ? wprec / static_cast<double>(nw) : 0.0;
  return {s >= 0.90 && w >= 0.90,
          "strong recall " + fmt(s) + " (need 0.90), weak precision " + fmt(w) + " (need 0.90)"};
}

Outcome rfe_contrast(Runs& runs) {
  Outcome out{true, {}};
  for (const char* preset : {"Set 6", "Set 7"}) {
    const auto& sq = find(runs.linear(), preset, Method::sq);
    const auto& rf = find(runs.rfe(), preset, Method::rfe);
    const double gap = sq.f1.value_or(0.0) - rf.f1.value_or(0.0);
    out.pass = out.pass && gap >= 0.3;
    out.detail += std::string(preset) + ": sq " + fmt(sq.f1) + " rfe " + fmt(rf.f1) + " gap " +
                  fmt(gap) + "; ";
  }
  return out;
}

Outcome nonlinear_bench(Runs& runs) {
  const auto& r = runs.nl();
  double sq_rec = 0.0, rfe_rec = 0.0, sq_acc = 0.0;
  std::size_t n_sq = 0, n_rfe = 0, n_acc = 0;
  for (const auto& run : r.runs) {
    if (run.method == Method::sq) {
      sq_acc += run.train_accuracy;
      ++n_acc;
      if (run.overall.recall) {
        sq_rec += *run.overall.recall;
        ++n_sq;
      }
    } else if (run.overall.recall) {
      rfe_rec += *run.overall.recall;
      ++n_rfe;
    }
  }
  sq_rec /= static_cast<double>(std::max<std::size_t>(n_sq, 1));
  rfe_rec /= static_cast<double>(std::max<std::size_t>(n_rfe, 1));
  sq_acc /= static_cast<double>(std::max<std::size_t>(n_acc, 1));
  const bool ok = sq_rec >= 0.75 && sq_acc >= 0.78 && sq_rec > rfe_rec;
  return {ok, "sq recall " + fmt(sq_rec) + " (need 0.75), sq train accuracy " + fmt(sq_acc) +
                  " (need 0.78), rfe recall " + fmt(rfe_rec) + " (need < sq)"};
}

Outcome null_control(Runs&) {
  int empty_a = 0, empty_m = 0;
  const PipelineConfig config;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(seed, 77);
    std::normal_distribution<double> normal;
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<double>> cols(20, std::vector<double>(200));
    std::vector<double> y(200);
    for (auto& c : cols)
      for (auto& v : c) v = normal(rng);
    for (auto& v : y) v = coin(rng) ? 1.0 : 0.0;
    const Dataset ds(cols, y, Task::classification);

    Rng pipeline_rng = make_rng(seed, 78);
    empty_a += decompose(ds, config, pipeline_rng).all_relevant.empty() ? 1 : 0;

    Rng gamma_rng = make_rng(seed, 79);
    const auto null = sample_null(config.minimal_forest, ds, config.alpha, gamma_rng);
    const auto gamma = prediction_interval(null.shadow_importances, config.p_value);
    empty_m += minimal_set(config.minimal_forest, ds, gamma.upper, gamma_rng).selected.empty();
  }
  return {empty_a >= 9 && empty_m >= 9, "A empty in " + std::to_string(empty_a) +
                                            "/10, M empty in " + std::to_string(empty_m) +
                                            "/10 (need 9)"};
}

Outcome stats_kernel(Runs&) {
  double worst = 0.0;
  for (double prob : {0.9, 0.975, 1.0 - 5e-7}) {
    for (double dof : {1.0, 5.0, 49.0, 1000.0}) {
      const double want = oracle::t_quantile_upper(1.0 - prob, dof);
      const double got = t_quantile(prob, dof);
      worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
  }
  const std::vector<double> flat(25, 3.5);
  const auto point = prediction_interval(flat, 1e-6);
  const bool collapsed = point.lower == 3.5 && point.upper == 3.5;

  Rng rng(2024);
  std::normal_distribution<double> normal;
  int covered = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> s(20);
    for (auto& v : s) v = normal(rng);
    covered += prediction_interval(s, 0.1).contains(normal(rng)) ? 1 : 0;
  }
  const double coverage = static_cast<double>(covered) / trials;
  const bool ok = worst <= 1e-6 && collapsed && std::abs(coverage - 0.9) <= 0.02;
  char err[32];
  std::snprintf(err, sizeof err, "%.2e", worst);
  return {ok, std::string("max quantile error ") + err + " (need 1e-6), point interval " +
                  (collapsed ? "yes" : "no") + ", coverage " + fmt(coverage, 4) +
                  " (need 0.90 +- 0.02)"};
}

// Checks every split of one unrestricted tree against brute force.
bool tree_matches(const std::vector<std::vector<double>>& rows, const std::vector<double>& y,
                  std::uint64_t seed) {
  const std::size_t n = rows.size();
  const std::size_t d = rows[0].size();
  std::vector<std::vector<double>> cols(d, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) cols[j][i] = rows[i][j];
  const Dataset ds(cols, y, Task::classification);
  ForestParams p;
  p.n_trees = 1;
  p.bagging_fraction = 1.0;
  p.max_depth = 64;
  p.num_leaves = 1024;
  Rng rng(seed);
  const auto forest = fit_forest(p, ds, rng);
  const auto& tree = forest.trees()[0];

  std::function<bool(std::int32_t, const std::vector<std::size_t>&)> visit =
      [&](std::int32_t id, const std::vector<std::size_t>& subset) {
        const auto& node = tree.nodes[static_cast<std::size_t>(id)];
        const auto want = oracle::brute_force_split(rows, y, subset);
        if (node.is_leaf()) return !want.has_value();
        if (!want || static_cast<std::size_t>(node.feature) != want->feature ||
            node.threshold != want->threshold)
          return false;
        std::vector<std::size_t> left, right;
        for (auto r : subset) (rows[r][node.feature] <= node.threshold ? left : right).push_back(r);
        return visit(node.left, left) && visit(node.right, right);
      };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return visit(0, all);
}

Outcome forest_oracle(Runs&) {
  std::size_t instances = 0, mismatches = 0;
  auto check = [&](std::size_t n, std::size_t d, std::uint64_t code) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<double> y(n);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) rows[i][j] = static_cast<double>((code >> bit++) & 1U);
      y[i] = static_cast<double>((code >> bit++) & 1U);
    }
    ++instances;
    if (!tree_matches(rows, y, code)) ++mismatches;
  };
  // Every binary instance up to n = 5, random ones for n = 6..8.
  for (std::size_t d = 1; d <= 2; ++d) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const std::uint64_t total = std::uint64_t{1} << (n * (d + 1));
      for (std::uint64_t code = 0; code < total; ++code) check(n, d, code);
    }
    Rng rng(d);
    for (std::size_t n = 6; n <= 8; ++n) {
      std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << (n * (d + 1))) - 1);
      for (int k = 0; k < 3000; ++k) check(n, d, pick(rng));
    }
  }
  return {mismatches == 0, std::to_string(instances) + " instances, " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome set_algebra(Runs&) {
  std::size_t violations = 0;
  PipelineConfig config;
  config.alpha = 20;
  config.boruta_max_iter = 30;
  config.loss_forest.n_trees = 50;
  for (std::uint64_t run = 0; run < 50; ++run) {
    Rng rng = make_rng(run, 500);
    std::uniform_int_distribution<std::size_t> count(0, 4);
    LinearSpec spec;
    spec.n = 60 + 20 * (run % 5);
    spec.n_strong = count(rng);
    spec.n_weak = count(rng);
    if (spec.n_weak == 1) spec.n_weak = 2;
    spec.n_irrelevant = count(rng);
    if (spec.n_strong + spec.n_weak + spec.n_irrelevant == 0) spec.n_irrelevant = 2;
    const auto data = gen_linear(spec, rng);
    const auto r = decompose(data.data, config, rng);
    const auto all = FeatureIndexSet::all(r.features);
    const auto m_and_a = r.minimal.intersect(r.all_relevant);
    const bool ok = r.strong.unite(r.weak) == r.all_relevant &&
                    r.strong.intersect(r.weak).empty() &&
                    r.irrelevant == all.minus(r.all_relevant) &&
                    r.strong.minus(m_and_a).empty() && r.strong_tests.size() == m_and_a.size();
    violations += ok ? 0 : 1;
  }
  return {violations == 0, "50 runs, " + std::to_string(violations) + " violations"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const Options& opt) {
  if (opt.cli.empty()) return {false, "no --cli path given"};
  std::filesystem::create_directories(opt.work_dir);
  const auto data = opt.work_dir / "set3.csv";
  const auto out1 = opt.work_dir / "report1.json";
  const auto out2 = opt.work_dir / "report2.json";
  const std::string cli = "\"" + opt.cli.string() + "\"";
  auto run = [](const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); };
  if (run(cli + " generate --preset \"Set 3\" --seed 3 --out \"" + data.string() + "\"") != 0)
    return {false, "generate failed"};
  for (const auto& out : {out1, out2}) {
    if (run(cli + " select --input \"" + data.string() + "\" --target y --seed 9 --out \"" +
            out.string() + "\"") != 0)
      return {false, "select failed"};
  }
  const auto a = slurp(out1);
  const auto b = slurp(out2);
  return {!a.empty() && a == b,
          std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

} // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      opt.cli = argv[++i];
    } else if (arg == "--work-dir" && i + 1 < argc) {
      opt.work_dir = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) opt.only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: arfs_acceptance [--cli PATH] [--work-dir DIR] [--only N,...]\n";
      return 2;
    }
  }

  Runs runs;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"linear benchmark F1", [&] { return linear_f1(runs); }},
      {"linear strong recall / weak precision", [&] { return linear_strong_weak(runs); }},
      {"RFE contrast on Sets 6 and 7", [&] { return rfe_contrast(runs); }},
      {"non-linear benchmark", [&] { return nonlinear_bench(runs); }},
      {"null control on all-noise data", [&] { return null_control(runs); }},
      {"t quantile and interval kernel", [&] { return stats_kernel(runs); }},
      {"tree splits match brute force", [&] { return forest_oracle(runs); }},
      {"set algebra over random runs", [&] { return set_algebra(runs); }},
      {"select output is byte-identical", [&] { return determinism(opt); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[k].first << ": "
              << o.detail << " (" << fmt(secs, 1) << " s)" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
