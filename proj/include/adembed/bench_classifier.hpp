#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adembed/bitcode.hpp"
#include "adembed/embedder.hpp"

namespace adembed::clf {

/// k-class linear classifier: label = argmax_i <w_i, x>.
struct LinearModel {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<std::vector<double>> weights;

  void validate() const;
};

struct FeatureSet {
  std::size_t n = 0;
  std::vector<std::vector<double>> features;
  std::vector<std::uint32_t> labels;

  std::size_t size() const noexcept { return features.size(); }
  void validate(std::size_t k) const;
};

// Feature file: "AEF1", u32 N, u32 n, u32 k, N*n f32 row-major, N u32 labels.
// Model file:   "AEW1", u32 k, u32 n, k*n f32 row-major.
// Loaders throw FormatError with the byte offset of the problem.
FeatureSet parse_features(std::span<const std::uint8_t> bytes, std::size_t* k_out = nullptr);
LinearModel parse_model(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_features(const FeatureSet& fs, std::size_t k);
std::vector<std::uint8_t> serialize_model(const LinearModel& model);

FeatureSet load_features(const std::string& path, std::size_t* k_out = nullptr);
LinearModel load_model(const std::string& path);
void save_features(const std::string& path, const FeatureSet& fs, std::size_t k);
void save_model(const std::string& path, const LinearModel& model);

// Ties resolve to the smallest class index.
std::size_t classify_uncompressed(const LinearModel& model, std::span<const double> x);

enum class Mode { adaptive, sign_rp, universal };

std::string to_string(Mode mode);

/// Binary-coded classifier. Adaptive mode keeps one embedder per class over
/// a shared pool; the baselines share the leading m rows of the same pool.
struct CompressedModel {
  Mode mode = Mode::adaptive;
  std::size_t m = 0;
  ProjectionSpec spec;
  std::vector<AdaptiveEmbedder> embedders;  // adaptive
  std::vector<PackedCode> codes;            // sign_rp / universal
  UniversalParams universal;                // universal

  std::size_t classes() const noexcept { return mode == Mode::adaptive ? embedders.size() : codes.size(); }
  // Rows [0, rows_needed()) cover every projection the model reads.
  std::size_t rows_needed() const noexcept { return mode == Mode::adaptive ? spec.m_pool : m; }
  double storage_bits_per_class() const;
};

CompressedModel compress_model(const LinearModel& model, Mode mode, std::size_t m, const ProjectionSpec& spec,
                               double delta = 2.0);

std::size_t classify_compressed(const CompressedModel& cm, std::span<const double> x);

// Same decision from projections of x onto rows [0, k), k >= rows_needed().
std::size_t classify_compressed_projected(const CompressedModel& cm, std::span<const double> pool_projections);

double evaluate(const LinearModel& model, const FeatureSet& fs);
double evaluate(const CompressedModel& cm, const FeatureSet& fs);

/// Accuracy from precomputed projections: row s of `projections` (stride
/// `row_count`) holds the projections of feature s onto rows [0, row_count).
double evaluate_projected(const CompressedModel& cm, std::span<const double> projections, std::size_t row_count,
                          std::span<const std::uint32_t> labels);

/// Separable synthetic task: k random unit weight vectors; feature s has a
/// uniformly random label y and equals margin * w_y + z with z ~ N(0, I/n).
struct SyntheticTask {
  LinearModel model;
  FeatureSet features;
};

inline constexpr double kDefaultMargin = 0.5;

SyntheticTask generate_synthetic_task(std::size_t k, std::size_t n, std::size_t count, double margin,
                                      std::uint64_t seed);

}  // namespace adembed::clf
