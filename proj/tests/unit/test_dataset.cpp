#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include "arfs/csv.hpp"
#include "arfs/dataset.hpp"
#include "arfs/error.hpp"
#include "arfs/feature_set.hpp"
#include "arfs/random.hpp"

using namespace arfs;

namespace {

Dataset small_dataset() {
  return Dataset({{1, 2, 3, 4}, {10, 20, 30, 40}, {-1, -2, -3, -4}}, {0, 1, 0, 1},
                 Task::classification);
}

} // namespace

TEST(FeatureIndexSet, SortsAndRejectsDuplicates) {
  FeatureIndexSet s({3, 1, 2});
  EXPECT_EQ(s.values(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(s.bound(), 4u);
  EXPECT_THROW(FeatureIndexSet({1, 1}), InvalidArgument);
}

TEST(FeatureIndexSet, SetOperations) {
  FeatureIndexSet a{0, 1, 2, 5};
  FeatureIndexSet b{1, 5, 7};
  EXPECT_EQ(a.unite(b), (FeatureIndexSet{0, 1, 2, 5, 7}));
  EXPECT_EQ(a.intersect(b), (FeatureIndexSet{1, 5}));
  EXPECT_EQ(a.minus(b), (FeatureIndexSet{0, 2}));
  EXPECT_EQ(FeatureIndexSet::all(3), (FeatureIndexSet{0, 1, 2}));
  EXPECT_TRUE(FeatureIndexSet{}.empty());
  EXPECT_EQ(FeatureIndexSet{}.bound(), 0u);
}

TEST(Dataset, ConstructionAndAccess) {
  const auto ds = small_dataset();
  EXPECT_EQ(ds.rows(), 4u);
  EXPECT_EQ(ds.features(), 3u);
  EXPECT_EQ(ds.at(2, 1), 30.0);
  EXPECT_EQ(ds.names().size(), 3u);
}

TEST(Dataset, RejectsInvalidInput) {
  EXPECT_THROW(Dataset({{1.0}}, {0.0}, Task::classification), InvalidArgument);
  EXPECT_THROW(Dataset({}, {0.0, 1.0}, Task::classification), InvalidArgument);
  EXPECT_THROW(Dataset({{1, 2, 3}}, {0, 1}, Task::classification), InvalidArgument);
  EXPECT_THROW(Dataset({{1, 2}}, {0, 2}, Task::classification), InvalidArgument);
  EXPECT_THROW(Dataset({{1, std::numeric_limits<double>::quiet_NaN()}}, {0, 1},
                       Task::classification),
               InvalidArgument);
  EXPECT_NO_THROW(Dataset({{1, 2}}, {0.5, 2.5}, Task::regression));
}

TEST(Dataset, PermuteFeatureIsAPermutation) {
  Rng rng(7);
  std::vector<std::vector<double>> cols{{}};
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    cols[0].push_back(i);
    y.push_back(i % 2);
  }
  const Dataset ds(cols, y, Task::classification);
  auto perm = permute_feature(ds, 0, rng);
  EXPECT_NE(perm, cols[0]);
  std::sort(perm.begin(), perm.end());
  EXPECT_EQ(perm, cols[0]);
  EXPECT_EQ(std::vector<double>(ds.column(0).begin(), ds.column(0).end()), cols[0]);
}

TEST(Dataset, ShadowExtensionAppendsPermutedCopy) {
  const auto ds = small_dataset();
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ext = extend_with_random_shadow(ds, rng);
    ASSERT_EQ(ext.data.features(), 4u);
    EXPECT_EQ(ext.shadow_index, 3u);
    ASSERT_LT(ext.source, 3u);
    std::vector<double> shadow(ext.data.column(3).begin(), ext.data.column(3).end());
    std::vector<double> source(ds.column(ext.source).begin(), ds.column(ext.source).end());
    std::sort(shadow.begin(), shadow.end());
    std::sort(source.begin(), source.end());
    EXPECT_EQ(shadow, source);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ext.data.at(1, j), ds.at(1, j));
  }
}

TEST(Dataset, ShadowSourceIsUniform) {
  const Dataset ds({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {1, 3, 2}}, {0, 1, 0}, Task::classification);
  std::vector<int> counts(4, 0);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    counts[extend_with_random_shadow(ds, rng).source] += 1;
  }
  for (int c : counts) EXPECT_NEAR(c / 500.0, 0.25, 0.06);
}

TEST(Dataset, DropThenSelectComplementIsIdentity) {
  const auto ds = small_dataset();
  EXPECT_EQ(select_features(ds, FeatureIndexSet::all(3)).columns(), ds.columns());
  for (std::size_t j = 0; j < 3; ++j) {
    const auto dropped = drop_feature(ds, j);
    EXPECT_EQ(dropped.features(), 2u);
    const auto rest = select_features(ds, FeatureIndexSet::all(3).minus({j}));
    EXPECT_EQ(dropped.columns(), rest.columns());
    EXPECT_EQ(dropped.names(), rest.names());
    EXPECT_EQ(std::count(dropped.names().begin(), dropped.names().end(), ds.names()[j]), 0);
  }
}

TEST(Dataset, DropAndSelectFeatures) {
  const auto ds = small_dataset();
  const auto dropped = drop_feature(ds, 1);
  ASSERT_EQ(dropped.features(), 2u);
  EXPECT_EQ(dropped.at(0, 1), -1.0);
  EXPECT_EQ(dropped.names()[1], ds.names()[2]);
  const auto sel = select_features(ds, {0, 2});
  ASSERT_EQ(sel.features(), 2u);
  EXPECT_EQ(sel.at(3, 1), -4.0);
  EXPECT_THROW(drop_feature(ds, 3), InvalidArgument);
  EXPECT_THROW(select_features(ds, {4}), InvalidArgument);
}

TEST(Sampling, SizesFollowRounding) {
  Rng rng(1);
  EXPECT_EQ(sample_rows(100, 0.632, Sampling::without_replacement, rng).size(), 63u);
  EXPECT_EQ(sample_rows(10, 1.0, Sampling::with_replacement, rng).size(), 10u);
  const auto rows = sample_rows(100, 0.632, Sampling::without_replacement, rng);
  EXPECT_EQ(std::set<std::size_t>(rows.begin(), rows.end()).size(), rows.size());
  auto full = sample_rows(10, 1.0, Sampling::without_replacement, rng);
  std::sort(full.begin(), full.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(full[i], i);
  EXPECT_THROW(sample_rows(10, 0.0, Sampling::with_replacement, rng), InvalidArgument);
  EXPECT_THROW(sample_rows(10, 1.5, Sampling::with_replacement, rng), InvalidArgument);
}

TEST(Sampling, BootstrapCoverageMatchesOneMinusOneOverE) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto rows = sample_rows(100, 1.0, Sampling::with_replacement, rng);
    total += static_cast<double>(std::set<std::size_t>(rows.begin(), rows.end()).size());
  }
  // E[distinct] = 100 * (1 - 0.99^100) = 63.4
  EXPECT_NEAR(total / 100.0, 100.0 * (1.0 - std::pow(0.99, 100)), 5.0);
}

TEST(Sampling, BootstrapRowsKeepsPairs) {
  const auto ds = small_dataset();
  Rng rng(11);
  const auto boot = bootstrap_rows(ds, 1.0, Sampling::with_replacement, rng);
  ASSERT_EQ(boot.rows(), 4u);
  for (std::size_t r = 0; r < boot.rows(); ++r) {
    EXPECT_EQ(boot.at(r, 1), boot.at(r, 0) * 10.0);
    EXPECT_EQ(boot.target()[r], static_cast<int>(boot.at(r, 0)) % 2 == 0 ? 1.0 : 0.0);
  }
}

TEST(Csv, RoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "arfs_csv_roundtrip.csv";
  Dataset ds({{0.125, -3.5, 1e-9}, {7, 8, 9}}, {1, 0, 1}, Task::classification, {"a", "b"});
  write_csv(ds, path);
  const auto back = load_csv(path);
  ASSERT_EQ(back.features(), 2u);
  EXPECT_EQ(back.names(), ds.names());
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(back.target()[r], ds.target()[r]);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(back.at(r, j), ds.at(r, j));
  }
  std::filesystem::remove(path);
}

TEST(Csv, TargetColumnAnywhereAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "arfs_csv_target.csv";
  {
    std::ofstream out(path);
    out << "label,x1,x2\n1,0.5,2\n0,1.5,3\n";
  }
  const auto ds = load_csv(path, "label");
  EXPECT_EQ(ds.names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(ds.target()[0], 1.0);
  EXPECT_THROW(load_csv(path, "missing"), Error);
  {
    std::ofstream out(path);
    out << "x,y\n1,abc\n2,1\n";
  }
  EXPECT_THROW(load_csv(path), Error);
  EXPECT_THROW(load_csv(path.string() + ".absent"), Error);
  std::filesystem::remove(path);
}

TEST(Random, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
  auto a = make_rng(5, 9);
  auto b = make_rng(5, 9);
  EXPECT_EQ(a(), b());
}
