#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arfs/dataset.hpp"
#include "arfs/forest.hpp"
#include "arfs/random.hpp"

namespace arfs {

/// Joint null samples from refits on shadow-extended data, one entry per
/// refit: the model's loss_score, its accuracy-style score, and the gain
/// importance of the appended shadow column.
struct NullSamples {
  std::vector<double> scores;
  std::vector<double> accuracies;
  std::vector<double> shadow_importances;
};

/// For each of `alpha` draws: append one permuted copy of a uniformly chosen
/// feature, fit a forest on the extended data and record the three values.
/// Draws run in parallel on independent substreams. With `forest_seed` set,
/// every refit grows its forest from that one seed (common random numbers),
/// so the spread of the samples comes from the shadow draw alone.
NullSamples sample_null(const ForestParams& params, const Dataset& ds, std::size_t alpha, Rng& rng,
                        std::optional<std::uint64_t> forest_seed = std::nullopt);

/// Student-t CDF with `dof` degrees of freedom.
double t_cdf(double t, double dof);

/// Inverse CDF of Student's t. Throws InvalidArgument unless 0 < prob < 1 and dof >= 1.
double t_quantile(double prob, double dof);

/// Upper-tail quantile: the t with P(T > t) = tail. Avoids forming 1 - tail
/// for tiny tail probabilities.
double t_upper_quantile(double tail, double dof);

struct IntervalStatistic {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
  double p = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

/// Two-sided prediction interval for one future observation:
/// mean ± t(1 - p/2, n - 1) · sd · sqrt(1 + 1/n), sd with n - 1 denominator.
IntervalStatistic prediction_interval(std::span<const double> samples, double p);

} // namespace arfs
