#include "arfs/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "arfs/error.hpp"

namespace arfs {

void GroundTruth::validate() const {
  const std::size_t d = features();
  const auto all = strong.unite(weak).unite(irrelevant);
  if (all.size() != d || all.bound() != d) {
    throw InvalidArgument("ground truth sets must be disjoint and cover 0..d-1");
  }
}

void LinearSpec::validate() const {
  if (n_strong + n_weak + n_irrelevant < 1) throw InvalidArgument("linear spec has no features");
  if (n_weak == 1) throw InvalidArgument("n_weak must be 0 or at least 2");
  if (n < 2) throw InvalidArgument("linear spec needs n >= 2");
  if (!(noise >= 0.0)) throw InvalidArgument("noise must be non-negative");
}

void NonlinearSpec::validate() const {
  if (n_strel < 1) throw InvalidArgument("n_strel must be at least 1");
  if (n_features < n_strel + n_redundant) {
    throw InvalidArgument("n_features must be at least n_strel + n_redundant");
  }
  if (n_redundant == 1) throw InvalidArgument("n_redundant must be 0 or at least 2");
  if (clusters_per_class < 1) throw InvalidArgument("clusters_per_class must be at least 1");
  if (!(class_sep > 0.0)) throw InvalidArgument("class_sep must be positive");
  if (!(noise >= 0.0)) throw InvalidArgument("noise must be non-negative");
  if (n < 5 * 2 * clusters_per_class) {
    throw InvalidArgument("n=" + std::to_string(n) + " cannot give every one of the " +
                          std::to_string(2 * clusters_per_class) + " clusters 5 samples");
  }
}

namespace {

using Column = std::vector<double>;

std::vector<double> normal_vector(std::size_t size, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(size);
  for (auto& x : v) x = normal(rng);
  return v;
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

// Random unit vector whose components all satisfy |w_i| >= min_weight.
// Offending components are redrawn until the constraint holds.
std::vector<double> prototype_weights(std::size_t k, Rng& rng) {
  const double min_weight = std::min(0.2, 0.9 / std::sqrt(static_cast<double>(k)));
  std::normal_distribution<double> normal;
  auto w = normal_vector(k, rng);
  for (int round = 0; round < 100000; ++round) {
    const double len = norm(w);
    bool ok = true;
    for (auto& x : w) {
      if (std::abs(x) < min_weight * len) {
        x = normal(rng);
        ok = false;
      }
    }
    if (ok) {
      for (auto& x : w) x /= len;
      return w;
    }
  }
  throw Error("could not draw prototype weights");
}

// Affine copies a*x + b with |a| in [0.5, 2] and random sign.
void append_affine_copies(const Column& source, std::size_t copies, Rng& rng,
                          std::vector<Column>& out) {
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t c = 0; c < copies; ++c) {
    const double a = scale(rng) * (flip(rng) ? -1.0 : 1.0);
    const double b = offset(rng);
    Column col(source.size());
    std::transform(source.begin(), source.end(), col.begin(),
                   [&](double x) { return a * x + b; });
    out.push_back(std::move(col));
  }
}

void append_noise(std::size_t n, std::size_t count, Rng& rng, std::vector<Column>& out) {
  for (std::size_t c = 0; c < count; ++c) out.push_back(normal_vector(n, rng));
}

// Independent N(0, sd^2) on every entry. Besides modelling measurement
// error, it keeps affine copies from tying exactly in split search.
void add_measurement_noise(double sd, Rng& rng, std::vector<Column>& columns) {
  if (sd <= 0.0) return;
  std::normal_distribution<double> normal(0.0, sd);
  for (auto& col : columns) {
    for (auto& v : col) v += normal(rng);
  }
}

GroundTruth layout_truth(std::size_t strong, std::size_t weak, std::size_t irrelevant) {
  std::vector<std::size_t> s(strong), w(weak), i(irrelevant);
  std::iota(s.begin(), s.end(), std::size_t{0});
  std::iota(w.begin(), w.end(), strong);
  std::iota(i.begin(), i.end(), strong + weak);
  return {FeatureIndexSet(std::move(s)), FeatureIndexSet(std::move(w)),
          FeatureIndexSet(std::move(i))};
}

bool balanced(const std::vector<double>& y) {
  const double ones = std::accumulate(y.begin(), y.end(), 0.0);
  const double n = static_cast<double>(y.size());
  return ones >= 0.25 * n && n - ones >= 0.25 * n;
}

using Vertex = std::vector<int>;

Vertex random_vertex(std::size_t m, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Vertex v(m);
  for (auto& x : v) x = coin(rng) ? 1 : -1;
  return v;
}

// Distinct random hypercube vertices as cluster centres, classes assigned in
// draw order. Among 16 valid draws, keep the one whose class centroids lie
// closest together, so a hyperplane through the centroids separates poorly.
std::vector<Vertex> cluster_vertices(std::size_t m, std::size_t per_class, Rng& rng) {
  const std::size_t clusters = 2 * per_class;
  const bool can_be_distinct = m >= 63 || (std::size_t{1} << m) >= clusters;

  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vertex> v;
    for (std::size_t c = 0; c < clusters; ++c) v.push_back(random_vertex(m, rng));

    if (can_be_distinct && std::set<Vertex>(v.begin(), v.end()).size() != clusters) continue;
    // A dimension on which every centre agrees would carry no class information.
    bool every_dim_varies = true;
    for (std::size_t j = 0; j < m && every_dim_varies; ++j) {
      bool varies = false;
      for (std::size_t c = 1; c < clusters; ++c) varies |= v[c][j] != v[0][j];
      every_dim_varies = varies;
    }
    if (every_dim_varies) return v;
  }
  throw Error("could not place cluster centres");
}

} // namespace

SyntheticData gen_linear(const LinearSpec& spec, Rng& rng) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t k = spec.n_strong + (spec.n_weak > 0 ? 1 : 0);

  std::vector<Column> latent;
  std::vector<double> y(n);
  bool ok = false;
  for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
    latent.clear();
    for (std::size_t j = 0; j < k; ++j) latent.push_back(normal_vector(n, rng));
    if (k == 0) {
      // Nothing relevant: the label is an independent fair coin.
      std::bernoulli_distribution coin(0.5);
      for (auto& v : y) v = coin(rng) ? 1.0 : 0.0;
    } else {
      const auto w = prototype_weights(k, rng);
      for (std::size_t i = 0; i < n; ++i) {
        double decision = 0.0;
        for (std::size_t j = 0; j < k; ++j) decision += w[j] * latent[j][i];
        y[i] = decision > 0.0 ? 1.0 : 0.0;
      }
    }
    ok = balanced(y);
  }
  if (!ok) throw Error("could not draw a balanced linear dataset");

  std::vector<Column> columns(latent.begin(), latent.begin() + static_cast<std::ptrdiff_t>(spec.n_strong));
  if (spec.n_weak > 0) append_affine_copies(latent.back(), spec.n_weak, rng, columns);
  append_noise(n, spec.n_irrelevant, rng, columns);
  add_measurement_noise(spec.noise, rng, columns);

  return {Dataset(std::move(columns), std::move(y), Task::classification),
          layout_truth(spec.n_strong, spec.n_weak, spec.n_irrelevant)};
}

SyntheticData gen_nonlinear(const NonlinearSpec& spec, Rng& rng) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t groups = spec.n_redundant > 0 ? spec.redundant_groups() : 0;
  const std::size_t m = spec.n_strel + groups;
  const std::size_t clusters = 2 * spec.clusters_per_class;

  const auto vertices = cluster_vertices(m, spec.clusters_per_class, rng);

  // Rows come out grouped by cluster and are shuffled afterwards.
  std::vector<Column> latent(m, Column(n));
  std::vector<double> y(n);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> mixing(-1.0, 1.0);
  std::size_t row = 0;
  for (std::size_t c = 0; c < clusters; ++c) {
    const std::size_t size = n / clusters + (c < n % clusters ? 1 : 0);
    std::vector<double> a(m * m);
    for (auto& v : a) v = mixing(rng);
    std::vector<double> z(m);
    for (std::size_t i = 0; i < size; ++i, ++row) {
      for (auto& v : z) v = normal(rng);
      for (std::size_t j = 0; j < m; ++j) {
        double x = spec.class_sep * vertices[c][j];
        for (std::size_t t = 0; t < m; ++t) x += z[t] * a[t * m + j];
        latent[j][row] = x;
      }
      y[row] = c < spec.clusters_per_class ? 0.0 : 1.0;
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  auto reorder = [&](const Column& col) {
    Column out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = col[perm[i]];
    return out;
  };
  for (auto& col : latent) col = reorder(col);
  y = reorder(y);

  std::vector<Column> columns(latent.begin(), latent.begin() + static_cast<std::ptrdiff_t>(spec.n_strel));
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t copies = spec.n_redundant / groups + (g < spec.n_redundant % groups ? 1 : 0);
    append_affine_copies(latent[spec.n_strel + g], copies, rng, columns);
  }
  const std::size_t n_irrelevant = spec.n_features - spec.n_strel - spec.n_redundant;
  append_noise(n, n_irrelevant, rng, columns);
  add_measurement_noise(spec.noise, rng, columns);

  return {Dataset(std::move(columns), std::move(y), Task::classification),
          layout_truth(spec.n_strel, spec.n_redundant, n_irrelevant)};
}

namespace {

std::string squash(const std::string& name) {
  std::string out;
  for (const unsigned char ch : name) {
    if (!std::isspace(ch) && ch != '_' && ch != '-') out.push_back(static_cast<char>(std::tolower(ch)));
  }
  return out;
}

struct PresetEntry {
  std::string name;
  PresetSpec spec;
};

const std::vector<PresetEntry>& preset_table() {
  static const std::vector<PresetEntry> table = [] {
    auto lin = [](std::size_t n, std::size_t s, std::size_t w, std::size_t i) {
      LinearSpec spec;
      spec.n = n;
      spec.n_strong = s;
      spec.n_weak = w;
      spec.n_irrelevant = i;
      return PresetSpec{spec};
    };
    auto nl = [](std::size_t features, std::size_t strel, std::size_t redundant) {
      NonlinearSpec spec;
      spec.n_features = features;
      spec.n_strel = strel;
      spec.n_redundant = redundant;
      return PresetSpec{spec};
    };
    return std::vector<PresetEntry>{
        {"Set 1", lin(150, 6, 0, 6)},   {"Set 2", lin(150, 0, 6, 6)},
        {"Set 3", lin(150, 3, 4, 3)},   {"Set 4", lin(256, 6, 6, 6)},
        {"Set 5", lin(512, 1, 2, 11)},  {"Set 6", lin(200, 1, 20, 0)},
        {"Set 7", lin(200, 1, 20, 20)}, {"Set 8", lin(2000, 10, 10, 50)},
        {"NL 1", nl(20, 10, 0)},        {"NL 2", nl(20, 4, 10)},
        {"NL 3", nl(50, 10, 10)},       {"NL 4", nl(80, 10, 10)},
    };
  }();
  return table;
}

const PresetEntry& find_preset(const std::string& name) {
  const auto key = squash(name);
  for (const auto& entry : preset_table()) {
    if (squash(entry.name) == key) return entry;
  }
  throw InvalidArgument("unknown preset '" + name + "'");
}

} // namespace

PresetSpec preset(const std::string& name) { return find_preset(name).spec; }

std::string canonical_preset_name(const std::string& name) { return find_preset(name).name; }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : preset_table()) out.push_back(entry.name);
    return out;
  }();
  return names;
}

bool is_linear(const PresetSpec& spec) noexcept {
  return std::holds_alternative<LinearSpec>(spec);
}

SyntheticData generate(const PresetSpec& spec, Rng& rng) {
  return std::visit(
      [&](const auto& s) -> SyntheticData {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, LinearSpec>) {
          return gen_linear(s, rng);
        } else {
          return gen_nonlinear(s, rng);
        }
      },
      spec);
}

} // namespace arfs
