#include "arfs/boruta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arfs/error.hpp"

namespace arfs {

namespace {

// P(X <= k), X ~ Binomial(n, 1/2), summed in log space.
double lower_tail(std::size_t k, std::size_t n) {
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double log_choose = lg_n1 - std::lgamma(static_cast<double>(i) + 1.0) -
                              std::lgamma(static_cast<double>(n - i) + 1.0);
    total += std::exp(log_choose + log_half_n);
  }
  return std::min(1.0, total);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
  const double upper = v[m];
  if (v.size() % 2) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
  return 0.5 * (lower + upper);
}

} // namespace

double binomial_two_sided_p(std::size_t hits, std::size_t trials) {
  if (hits > trials) throw InvalidArgument("hits exceed trials");
  // The distribution is symmetric, so outcomes no more likely than `hits`
  // are exactly the two tails beyond min(hits, trials - hits).
  const std::size_t k = std::min(hits, trials - hits);
  if (2 * k + 1 >= trials) return 1.0;
  return std::min(1.0, 2.0 * lower_tail(k, trials));
}

double binomial_upper_tail_p(std::size_t hits, std::size_t trials) {
  if (hits > trials) throw InvalidArgument("hits exceed trials");
  if (hits == 0) return 1.0;
  // P(X >= h) = P(X <= n - h) by symmetry.
  return lower_tail(trials - hits, trials);
}

BorutaResult run_boruta(const ForestParams& params, const Dataset& ds, std::size_t max_iter,
                        double test_level, Rng& rng) {
  if (max_iter < 10) throw InvalidArgument("boruta max_iter must be at least 10");
  if (!(test_level > 0.0 && test_level < 1.0)) {
    throw InvalidArgument("boruta test level must lie in (0, 1)");
  }
  params.validate();

  const std::size_t d = ds.features();
  const double level = test_level / static_cast<double>(d);
  const auto target = ds.target();

  BorutaResult result;
  auto& state = result.state;
  state.hits.assign(d, 0);
  state.decided.assign(d, Decision::tentative);

  std::vector<std::vector<double>> history(d);
  std::vector<double> max_shadow_history;

  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::vector<std::size_t> active;
    std::vector<std::size_t> tentative;
    for (std::size_t j = 0; j < d; ++j) {
      if (state.decided[j] != Decision::rejected) active.push_back(j);
      if (state.decided[j] == Decision::tentative) tentative.push_back(j);
    }
    if (tentative.empty()) break;

    // Non-rejected real columns first, then a fresh shadow of every feature.
    // The contrast set keeps its full size so that late in a run a noise
    // feature with a chance in-sample association still faces d shadows.
    std::vector<std::vector<double>> columns;
    columns.reserve(active.size() + d);
    for (const auto j : active) {
      const auto c = ds.column(j);
      columns.emplace_back(c.begin(), c.end());
    }
    for (std::size_t j = 0; j < d; ++j) columns.push_back(permute_feature(ds, j, rng));
    result.shadow_counts.push_back(d);

    const Dataset extended(std::move(columns), {target.begin(), target.end()}, ds.task());
    const auto importance = fit_forest(params, extended, rng).importance_gain();

    double max_shadow = 0.0;
    for (std::size_t s = active.size(); s < importance.size(); ++s) {
      max_shadow = std::max(max_shadow, importance[s]);
    }
    max_shadow_history.push_back(max_shadow);

    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto j = active[a];
      if (state.decided[j] != Decision::tentative) continue;
      history[j].push_back(importance[a]);
      if (importance[a] > max_shadow) ++state.hits[j];
    }
    state.iteration = it;

    for (const auto j : tentative) {
      if (binomial_two_sided_p(state.hits[j], it) >= level) continue;
      if (2 * state.hits[j] > it) state.decided[j] = Decision::confirmed;
      else if (2 * state.hits[j] < it) state.decided[j] = Decision::rejected;
    }
  }

  const double shadow_median = median(max_shadow_history);
  std::vector<std::size_t> selected;
  std::vector<std::size_t> resolved;
  for (std::size_t j = 0; j < d; ++j) {
    if (state.decided[j] == Decision::confirmed) {
      selected.push_back(j);
    } else if (state.decided[j] == Decision::tentative && !history[j].empty() &&
               median(history[j]) > shadow_median) {
      selected.push_back(j);
      resolved.push_back(j);
    }
  }
  result.selected = FeatureIndexSet(std::move(selected));
  result.resolved_tentative = FeatureIndexSet(std::move(resolved));
  return result;
}

} // namespace arfs
