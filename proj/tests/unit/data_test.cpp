#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sorr/data_ops.hpp"
#include "sorr/dataset.hpp"
#include "sorr/errors.hpp"
#include "sorr/losses.hpp"

namespace sorr {
namespace {

TEST(Csv, SmallBinaryFixture) {
  const Dataset d = parse_csv("label,x1,x2\n1,0.5,1.0\n-1,2.0,-3.0\n1,0.0,0.0\n");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.dim(), 2);
  EXPECT_TRUE(d.binary());
  EXPECT_EQ(d.labels, (std::vector<int>{1, 0, 1}));
  EXPECT_DOUBLE_EQ(d.features(1, 1), -3.0);
}

TEST(Csv, LabelSetColumn) {
  LoadOptions opt;
  opt.num_labels = 6;
  const Dataset d = parse_csv("labels,x1\n1;3,0.1\n2,0.2\n", opt);
  ASSERT_TRUE(d.multilabel());
  EXPECT_EQ(d.label_sets[0], LabelSet({0, 2}));  // 1-based on disk
  EXPECT_EQ(d.l, 6);
}

TEST(Csv, ErrorsCarryLineNumbers) {
  try {
    parse_csv("label,x1\n1,0.5\n1,abc\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_csv("label,x1\n1,0.5,7\n"), ParseError);
  EXPECT_THROW(parse_csv(""), DataError);
}

TEST(Libsvm, SparseRowIsDensified) {
  LoadOptions opt;
  opt.num_labels = 3;
  const Dataset d = parse_libsvm("2 1:0.5 4:1.0\n", opt);
  ASSERT_EQ(d.dim(), 4);
  EXPECT_EQ(d.features.row(0), (Eigen::RowVectorXd(4) << 0.5, 0.0, 0.0, 1.0).finished());
  EXPECT_EQ(d.labels[0], 1);  // label 2 on disk
}

TEST(Libsvm, FixedWidthPadsColumns) {
  LoadOptions opt;
  opt.num_labels = 3;
  opt.num_features = 6;
  EXPECT_EQ(parse_libsvm("1 2:1\n3 1:4\n", opt).dim(), 6);
  opt.num_features = 1;
  EXPECT_THROW(parse_libsvm("1 2:1\n", opt), std::exception);
}

TEST(Files, MissingFileIsADataError) {
  EXPECT_THROW(load_dataset("/nonexistent/none.csv", DataFormat::csv), DataError);
}

TEST(Files, CsvRoundTrip) {
  const Dataset d = gen_synthetic({false, 2, 5});
  const std::filesystem::path p = std::filesystem::temp_directory_path() / "sorr_roundtrip.csv";
  {
    std::ofstream out(p);
    out << to_csv(d);
  }
  const Dataset back = load_dataset(p, DataFormat::csv);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.features, d.features);
  std::filesystem::remove(p);
}

TEST(Synthetic, BalancedClassCounts) {
  const Dataset d = gen_synthetic({true, 0, 3});
  EXPECT_EQ(d.size(), static_cast<std::size_t>(kSyntheticSize));
  EXPECT_EQ(std::count(d.labels.begin(), d.labels.end(), 1), 100);
}

TEST(Synthetic, ImbalancedRatio) {
  const Dataset d = gen_synthetic({false, 0, 3});
  EXPECT_EQ(std::count(d.labels.begin(), d.labels.end(), 1), 20);
}

TEST(Synthetic, PlantedOutlierHasTheLargestHingeLoss) {
  const Dataset d = gen_synthetic({true, 1, 8});
  // Reference separator along the class-mean direction: f(x) = x1.
  std::size_t worst = 0;
  double worst_loss = -1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = d.sign(i) * d.features(static_cast<Eigen::Index>(i), 0);
    const double loss = margin_loss(MarginLossKind::hinge, t).value;
    if (loss > worst_loss) {
      worst_loss = loss;
      worst = i;
    }
  }
  EXPECT_EQ(d.labels[worst], 0);  // labelled blue
  EXPECT_NEAR(d.features(static_cast<Eigen::Index>(worst), 0), 3.5, 0.5);
}

TEST(Synthetic, SameSeedSameData) {
  EXPECT_EQ(gen_synthetic({true, 2, 9}).features, gen_synthetic({true, 2, 9}).features);
  EXPECT_NE(gen_synthetic({true, 2, 9}).features, gen_synthetic({true, 2, 10}).features);
}

Dataset multiclass(std::size_t n, int l) {
  Dataset d;
  d.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 1);
  d.l = l;
  for (std::size_t i = 0; i < n; ++i) {
    d.labels.push_back(static_cast<int>(i % static_cast<std::size_t>(l)));
  }
  return d;
}

TEST(Noise, ZeroProbabilityKeepsLabels) {
  const Dataset d = multiclass(100, 5);
  NoiseSpec spec;
  spec.p = 0.0;
  const Dataset out = inject_noise(d, spec);
  EXPECT_EQ(out.labels, d.labels);
  EXPECT_EQ(out.flip_count, 0u);
}

TEST(Noise, BinaryCertainFlipInvertsAll) {
  const Dataset d = multiclass(50, 2);
  NoiseSpec spec;
  spec.p = 1.0;
  const Dataset out = inject_noise(d, spec);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NE(out.labels[i], d.labels[i]);
  }
  EXPECT_EQ(out.flip_count, 50u);
}

TEST(Noise, AsymmetricMapRateWithinThreeSigma) {
  const Dataset d = multiclass(20000, 10);
  NoiseSpec spec;
  spec.mode = NoiseMode::asymmetric_map;
  spec.p = 0.4;
  spec.flip_map = {{2, 7}, {3, 8}, {5, 6}, {6, 5}, {7, 1}};
  spec.seed = 4;
  const Dataset out = inject_noise(d, spec);
  const double eligible = 0.5 * 20000.0;
  const double sigma = std::sqrt(eligible * 0.4 * 0.6);
  EXPECT_NEAR(static_cast<double>(out.flip_count), 0.4 * eligible, 3 * sigma);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (out.labels[i] != d.labels[i]) {
      EXPECT_EQ(out.labels[i], spec.flip_map.at(d.labels[i]));
    }
  }
}

TEST(Noise, MultilabelReplacementLeavesOriginalSet) {
  Dataset d;
  d.features = Eigen::MatrixXd::Zero(200, 1);
  d.l = 6;
  for (int i = 0; i < 200; ++i) {
    d.label_sets.push_back(LabelSet({0, 1}));
  }
  NoiseSpec spec;
  spec.mode = NoiseMode::multilabel_symmetric;
  spec.p = 0.5;
  const Dataset out = inject_noise(d, spec);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (out.corrupted[i]) {
      for (int lab : out.label_sets[i].labels()) {
        EXPECT_GE(lab, 2);
      }
    }
  }
  EXPECT_GT(out.flip_count, 60u);
  EXPECT_LT(out.flip_count, 140u);
}

TEST(Split, SizesAndDeterminism) {
  const auto parts = split_indices(100, {0.5, 0.25, 0.25}, 7);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].size(), 50u);
  EXPECT_EQ(parts[1].size(), 25u);
  EXPECT_EQ(parts[2].size(), 25u);
  EXPECT_EQ(parts, split_indices(100, {0.5, 0.25, 0.25}, 7));
  std::vector<std::size_t> all;
  for (const auto& p : parts) {
    all.insert(all.end(), p.begin(), p.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(all[i], i);
  }
}

TEST(Standardize, FitOnTrainOnly) {
  Dataset train;
  train.features.resize(2, 2);
  train.features << 1.0, 5.0, 3.0, 5.0;
  train.labels = {0, 1};
  train.l = 2;
  Dataset test = train;
  test.features << 2.0, 7.0, 4.0, 5.0;
  const Standardization st = standardize(train, {&test});
  EXPECT_DOUBLE_EQ(st.mean(0), 2.0);
  EXPECT_DOUBLE_EQ(st.stddev(0), 1.0);
  EXPECT_DOUBLE_EQ(train.features(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(train.features(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(train.features(0, 1), 5.0);  // constant column untouched
  EXPECT_DOUBLE_EQ(test.features(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(test.features(1, 0), 2.0);
}

TEST(BundledData, MonkLoads) {
  const std::filesystem::path p = std::filesystem::path(SORR_DEFAULT_DATA_DIR) / "monk2.csv";
  if (!std::filesystem::exists(p)) {
    GTEST_SKIP() << "monk2.csv not present";
  }
  const Dataset d = load_dataset(p, DataFormat::csv);
  EXPECT_TRUE(d.binary());
  EXPECT_EQ(d.dim(), 6);
  EXPECT_EQ(d.size(), 432u);
}

}  // namespace
}  // namespace sorr
