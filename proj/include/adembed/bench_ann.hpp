#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adembed/projgen.hpp"

namespace adembed::ann {

enum class Method {
  adaptive,
  sign_rp_eq_storage,
  sign_rp_eq_complexity,
  universal,
  uncompressed,
};

enum class Reference {
  entry,  // every database entry carries its own adaptive embedder
  query,  // one embedder adapted to the query, applied to every entry
};

std::string to_string(Method method);
std::optional<Method> parse_method(const std::string& name);

/// Low-contrast nearest-neighbour experiment. Defaults are the desk-scale
/// setting; the full-size run uses n = m_pool = 8192, m = 512.
struct AnnConfig {
  std::size_t n = 2048;
  std::size_t m_pool = 2048;
  std::size_t m = 256;
  double rho_true = 0.07;
  std::size_t n_true = 100;
  std::size_t n_false = 1000;
  double delta_universal = 2.0;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  // 0 sweeps every attainable distance level; otherwise this many equal steps on [0, 1].
  std::size_t threshold_steps = 0;
  Reference reference = Reference::entry;

  void validate() const;
};

struct RocPoint {
  double threshold = 0.0;
  double p_detect = 0.0;
  double p_false_alarm = 0.0;
};

struct Dataset {
  std::vector<double> query;
  std::vector<std::vector<double>> entries;
  // 1 for true neighbours, 0 for disturbers. True neighbours come first.
  std::vector<std::uint8_t> is_true;
};

/// Query q ~ N(0, I); true neighbours rho q + sqrt(1 - rho^2) g with
/// g ~ N(0, I); disturbers i.i.d. N(0, I). Entry i is drawn from its own
/// stream (seed, i + 1), the query from stream 0.
Dataset generate_dataset(const AnnConfig& cfg);

/// Closest false-neighbour distance over farthest true-neighbour distance,
/// Euclidean on l2-normalized signals.
double contrast(std::span<const double> query, std::span<const std::vector<double>> entries,
                std::span<const std::uint8_t> is_true);

// ROC from per-entry distances: an entry is declared a neighbour when its
// distance is <= threshold.
std::vector<RocPoint> roc_from_distances(std::span<const double> distances, std::span<const std::uint8_t> is_true,
                                         std::span<const double> thresholds);

/// Trapezoidal area under the ROC. Points are sorted internally and the
/// corners (0,0) and (1,1) are added.
double auc(std::span<const RocPoint> points);

struct RocResult {
  Method method = Method::adaptive;
  std::size_t code_length = 0;
  double storage_bits = 0.0;  // per database entry
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Generates the dataset and projects every signal once onto the rows that
/// any method needs; each method then only subsamples and compares codes.
class AnnExperiment {
 public:
  explicit AnnExperiment(const AnnConfig& cfg);

  const AnnConfig& config() const noexcept { return cfg_; }
  const Dataset& dataset() const noexcept { return data_; }
  const ProjectionSpec& spec() const noexcept { return spec_; }

  // Normalized distances of every entry to the query under `method`.
  std::vector<double> distances(Method method) const;
  RocResult run(Method method) const;

  std::size_t code_length(Method method) const;
  double storage_bits(Method method) const;

 private:
  std::span<const double> entry_projections(std::size_t i) const {
    return {entry_proj_.data() + i * rows_, rows_};
  }
  std::vector<double> thresholds(Method method, std::span<const double> distances) const;

  AnnConfig cfg_;
  ProjectionSpec spec_;
  Dataset data_;
  std::size_t rows_ = 0;
  std::vector<double> query_proj_;
  std::vector<double> entry_proj_;
};

std::vector<RocPoint> run_roc(const AnnConfig& cfg, Method method);

}  // namespace adembed::ann
