#include "arfs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "arfs/error.hpp"
#include "arfs/parallel.hpp"

namespace arfs {

NullSamples sample_null(const ForestParams& params, const Dataset& ds, std::size_t alpha, Rng& rng,
                        std::optional<std::uint64_t> forest_seed) {
  if (alpha < 2) throw InvalidArgument("alpha must be at least 2");
  params.validate();
  const std::uint64_t base = draw_seed(rng);
  NullSamples out{std::vector<double>(alpha), std::vector<double>(alpha),
                  std::vector<double>(alpha)};
  parallel_for(alpha, [&](std::size_t s) {
    Rng sample_rng = make_rng(base, s);
    const auto extended = extend_with_random_shadow(ds, sample_rng);
    Rng forest_rng = forest_seed ? Rng(*forest_seed) : sample_rng;
    const auto model = fit_forest(params, extended.data, forest_rng);
    out.scores[s] = model.loss_score(extended.data);
    out.accuracies[s] = model.score(extended.data);
    out.shadow_importances[s] = model.importance_gain()[extended.shadow_index];
  });
  return out;
}

namespace {

double t_density(double t, double dof) {
  const double log_norm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                          0.5 * std::log(dof * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (dof + 1.0) * std::log1p(t * t / dof));
}

// P(T > t) for t >= 0, evaluated on whichever incomplete-beta branch keeps
// its argument away from 1.
double upper_tail(double t, double dof) {
  const double t2 = t * t;
  if (t2 < dof) {
    return 0.5 - 0.5 * boost::math::ibeta(0.5, 0.5 * dof, t2 / (dof + t2));
  }
  return 0.5 * boost::math::ibeta(0.5 * dof, 0.5, dof / (dof + t2));
}

void check_dof(double dof) {
  if (!(dof >= 1.0) || !std::isfinite(dof)) {
    throw InvalidArgument("degrees of freedom must be >= 1, got " + std::to_string(dof));
  }
}

} // namespace

double t_cdf(double t, double dof) {
  check_dof(dof);
  return t >= 0.0 ? 1.0 - upper_tail(t, dof) : upper_tail(-t, dof);
}

double t_upper_quantile(double tail, double dof) {
  check_dof(dof);
  if (!(tail > 0.0 && tail < 1.0)) {
    throw InvalidArgument("tail probability must lie in (0, 1), got " + std::to_string(tail));
  }
  if (tail == 0.5) return 0.0;
  if (tail > 0.5) return -t_upper_quantile(1.0 - tail, dof);

  // Bracket [lo, hi] with upper_tail(lo) >= tail > upper_tail(hi).
  double lo = 0.0;
  double hi = 1.0;
  while (upper_tail(hi, dof) > tail) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error("t quantile bracket overflow");
  }

  // Newton on the tail function, falling back to bisection whenever the step
  // leaves the bracket.
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = upper_tail(t, dof) - tail;
    if (f == 0.0) return t;
    if (f > 0.0) lo = t;
    else hi = t;

    const double step = f / t_density(t, dof);
    double next = t + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 1e-15 * hi) {
      return next;
    }
    t = next;
  }
  return t;
}

double t_quantile(double prob, double dof) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw InvalidArgument("probability must lie in (0, 1), got " + std::to_string(prob));
  }
  if (prob == 0.5) {
    check_dof(dof);
    return 0.0;
  }
  return prob > 0.5 ? t_upper_quantile(1.0 - prob, dof) : -t_upper_quantile(prob, dof);
}

IntervalStatistic prediction_interval(std::span<const double> samples, double p) {
  if (samples.size() < 2) throw InvalidArgument("prediction interval needs at least two samples");
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("significance p must lie in (0, 1), got " + std::to_string(p));
  }
  IntervalStatistic out;
  out.n = samples.size();
  out.p = p;
  const auto n = static_cast<double>(out.n);
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) {
    out.mean = out.lower = out.upper = *lo;
    return out;
  }
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (const double x : samples) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / (n - 1.0));

  if (out.sd == 0.0) {
    out.lower = out.upper = out.mean;
    return out;
  }
  const double half = t_upper_quantile(0.5 * p, n - 1.0) * out.sd * std::sqrt(1.0 + 1.0 / n);
  out.lower = out.mean - half;
  out.upper = out.mean + half;
  return out;
}

} // namespace arfs
