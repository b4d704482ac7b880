#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "adembed/bench_classifier.hpp"
#include "adembed/embedder.hpp"
#include "adembed/errors.hpp"
#include "adembed/io.hpp"
#include "adembed/linalg.hpp"

using namespace adembed;
using namespace adembed::clf;

namespace {

LinearModel basis_model(std::size_t k) {
  LinearModel model{k, k, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0))};
  for (std::size_t i = 0; i < k; ++i) model.weights[i][i] = 1.0;
  return model;
}

std::vector<std::uint8_t> header_only(std::uint32_t count, std::uint32_t n, std::uint32_t k) {
  io::ByteWriter w;
  w.raw("AEF1");
  w.u32(count);
  w.u32(n);
  w.u32(k);
  return w.take();
}

}  // namespace

TEST(FeatureFile, ZeroCountIsFormatError) {
  EXPECT_THROW(parse_features(header_only(0, 4, 2)), FormatError);
}

TEST(FeatureFile, RoundTripIsByteIdentical) {
  const auto task = generate_synthetic_task(3, 16, 20, 1.0, 5);
  const auto bytes = serialize_features(task.features, 3);
  std::size_t k = 0;
  const auto parsed = parse_features(bytes, &k);
  EXPECT_EQ(k, 3u);
  EXPECT_EQ(serialize_features(parsed, k), bytes);
  const auto model_bytes = serialize_model(task.model);
  EXPECT_EQ(serialize_model(parse_model(model_bytes)), model_bytes);
}

TEST(FeatureFile, SyntheticOutputLoadsWithDeclaredShape) {
  const auto task = generate_synthetic_task(4, 32, 50, 1.0, 6);
  const auto dir = std::filesystem::temp_directory_path() / "adembed_clf_test";
  std::filesystem::create_directories(dir);
  save_features((dir / "f.aef").string(), task.features, 4);
  save_model((dir / "w.aew").string(), task.model);
  std::size_t k = 0;
  const auto fs = load_features((dir / "f.aef").string(), &k);
  const auto model = load_model((dir / "w.aew").string());
  EXPECT_EQ(fs.size(), 50u);
  EXPECT_EQ(fs.n, 32u);
  EXPECT_EQ(k, 4u);
  EXPECT_EQ(model.k, 4u);
  EXPECT_EQ(model.n, 32u);
  EXPECT_EQ(fs.labels, task.features.labels);
  std::filesystem::remove_all(dir);
}

TEST(FeatureFile, CorruptInputs) {
  const auto task = generate_synthetic_task(3, 8, 5, 1.0, 7);
  auto bytes = serialize_features(task.features, 3);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(parse_features(bad_magic), FormatError);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 2);
  EXPECT_THROW(parse_features(truncated), FormatError);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(parse_features(trailing), FormatError);
  auto bad_label = bytes;
  bad_label[bad_label.size() - 4] = 9;  // last label little-endian low byte
  EXPECT_THROW(parse_features(bad_label), FormatError);
  io::ByteWriter w;
  w.raw("AEW1");
  w.u32(1);
  w.u32(2);
  w.f32(0.0f);
  w.f32(0.0f);
  EXPECT_THROW(parse_model(w.bytes()), FormatError);
}

TEST(FeatureFile, ErrorCarriesOffset) {
  try {
    parse_features(header_only(0, 4, 2));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Uncompressed, BasisAndTies) {
  const auto model = basis_model(5);
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<double> x(5, 0.0);
    x[j] = 1.0;
    EXPECT_EQ(classify_uncompressed(model, x), j);
  }
  EXPECT_EQ(classify_uncompressed(model, std::vector<double>(5, 0.0)), 0u);
  EXPECT_THROW(classify_uncompressed(model, std::vector<double>(4, 0.0)), ShapeError);
}

TEST(Uncompressed, MatchesBruteForce) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  LinearModel model{7, 20, std::vector<std::vector<double>>(7, std::vector<double>(20))};
  for (auto& w : model.weights)
    for (double& v : w) v = nd(gen);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(20);
    for (double& v : x) v = nd(gen);
    std::size_t best = 0;
    double best_score = -INFINITY;
    for (std::size_t i = 0; i < 7; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 20; ++j) s += model.weights[i][j] * x[j];
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    EXPECT_EQ(classify_uncompressed(model, x), best);
  }
}

TEST(Compress, IdenticalWeightsGiveIdenticalCodes) {
  LinearModel model{2, 12, {std::vector<double>(12, 0.3), std::vector<double>(12, 0.3)}};
  const auto cm = compress_model(model, Mode::adaptive, 5, {3, 12, 40, 1.0});
  EXPECT_EQ(cm.embedders[0].locations, cm.embedders[1].locations);
  EXPECT_EQ(cm.embedders[0].ref_code, cm.embedders[1].ref_code);
}

TEST(Compress, LocationsAreTopMOfOwnProjections) {
  const auto task = generate_synthetic_task(4, 64, 1, 1.0, 8);
  const ProjectionSpec spec{8, 64, 300, 1.0};
  const auto cm = compress_model(task.model, Mode::adaptive, 20, spec);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto y = project_leading(spec, task.model.weights[i], spec.m_pool);
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return std::abs(y[a]) != std::abs(y[b]) ? std::abs(y[a]) > std::abs(y[b]) : a < b;
    });
    order.resize(20);
    std::sort(order.begin(), order.end());
    EXPECT_EQ(cm.embedders[i].locations, order);
  }
}

TEST(Compress, FullPoolAdaptiveEqualsSignRp) {
  const auto task = generate_synthetic_task(3, 32, 200, 0.5, 9);
  const ProjectionSpec spec{9, 32, 48, 1.0};
  const auto a = compress_model(task.model, Mode::adaptive, 48, spec);
  const auto s = compress_model(task.model, Mode::sign_rp, 48, spec);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.embedders[i].ref_code, s.codes[i]);
  for (const auto& x : task.features.features) EXPECT_EQ(classify_compressed(a, x), classify_compressed(s, x));
  EXPECT_DOUBLE_EQ(evaluate(a, task.features), evaluate(s, task.features));
}

TEST(Compress, StorageBits) {
  const auto task = generate_synthetic_task(2, 16, 1, 1.0, 10);
  const ProjectionSpec spec{10, 16, 64, 1.0};
  EXPECT_NEAR(compress_model(task.model, Mode::adaptive, 8, spec).storage_bits_per_class(), storage_bits(8, 64), 1e-12);
  EXPECT_EQ(compress_model(task.model, Mode::sign_rp, 8, spec).storage_bits_per_class(), 8.0);
  EXPECT_THROW(compress_model(task.model, Mode::sign_rp, 65, spec), DomainError);
}

TEST(Classify, OwnWeightVectorAndSingleClass) {
  const auto task = generate_synthetic_task(8, 128, 1, 1.0, 12);
  const ProjectionSpec spec{12, 128, 512, 1.0};
  const auto cm = compress_model(task.model, Mode::adaptive, 30, spec);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_EQ(classify_compressed(cm, task.model.weights[j]), j);
    EXPECT_EQ(hamming_raw(embed(cm.embedders[j], task.model.weights[j]), cm.embedders[j].ref_code), 0u);
  }
  LinearModel one{1, 16, {std::vector<double>(16, 1.0)}};
  const auto single = compress_model(one, Mode::sign_rp, 10, {1, 16, 32, 1.0});
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(16);
    for (double& v : x) v = nd(gen);
    EXPECT_EQ(classify_compressed(single, x), 0u);
  }
}

TEST(Classify, FullCodeAgreesWithUncompressed) {
  const std::size_t n = 1024;
  const auto task = generate_synthetic_task(10, n, 2000, kDefaultMargin, 13);
  const ProjectionSpec spec{13, n, n, 1.0};
  const auto cm = compress_model(task.model, Mode::adaptive, n, spec);
  const auto proj = project_batch(spec, task.features.features, n);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < task.features.size(); ++i) {
    const auto predicted = classify_compressed_projected(cm, std::span(proj).subspan(i * n, n));
    agree += predicted == classify_uncompressed(task.model, task.features.features[i]);
  }
  EXPECT_GE(static_cast<double>(agree) / task.features.size(), 0.99);
}

TEST(Evaluate, CorrectAndRandomLabels) {
  auto task = generate_synthetic_task(10, 64, 10000, 50.0, 14);
  EXPECT_EQ(evaluate(task.model, task.features), 1.0);
  std::mt19937_64 gen(15);
  for (auto& label : task.features.labels) label = static_cast<std::uint32_t>(gen() % 10);
  EXPECT_NEAR(evaluate(task.model, task.features), 0.1, 0.02);
}

TEST(Evaluate, ProjectedMatchesDirect) {
  const auto task = generate_synthetic_task(5, 64, 100, 1.0, 16);
  const ProjectionSpec spec{16, 64, 64, 1.0};
  const auto cm = compress_model(task.model, Mode::adaptive, 16, spec);
  const auto proj = project_batch(spec, task.features.features, 64);
  EXPECT_DOUBLE_EQ(evaluate_projected(cm, proj, 64, task.features.labels), evaluate(cm, task.features));
}

TEST(Evaluate, AdaptiveBeatsSignRpAtSmallM) {
  const std::size_t n = 1024;
  const auto task = generate_synthetic_task(10, n, 2000, kDefaultMargin, 17);
  const ProjectionSpec spec{17, n, n, 1.0};
  const auto proj = project_batch(spec, task.features.features, n);
  const double adaptive =
      evaluate_projected(compress_model(task.model, Mode::adaptive, 32, spec), proj, n, task.features.labels);
  const double signrp =
      evaluate_projected(compress_model(task.model, Mode::sign_rp, 32, spec), proj, n, task.features.labels);
  EXPECT_GT(adaptive, signrp);
}

TEST(Synthetic, MarginControlsSeparability) {
  EXPECT_EQ(evaluate(generate_synthetic_task(10, 64, 2000, 1e6, 18).model, generate_synthetic_task(10, 64, 2000, 1e6, 18).features),
            1.0);
  const auto flat = generate_synthetic_task(10, 64, 5000, 0.0, 19);
  EXPECT_LT(evaluate(flat.model, flat.features), 0.15);
  const auto task = generate_synthetic_task(10, 1024, 5000, kDefaultMargin, 20);
  EXPECT_GE(evaluate(task.model, task.features), 0.99);
  EXPECT_THROW(generate_synthetic_task(1, 8, 5, 1.0, 1), DomainError);
}
