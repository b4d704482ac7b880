#include "adembed/bench_ann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "adembed/bitcode.hpp"
#include "adembed/embedder.hpp"
#include "adembed/errors.hpp"
#include "adembed/linalg.hpp"
#include "adembed/parallel.hpp"
#include "adembed/rng.hpp"

namespace adembed::ann {

std::string to_string(Method method) {
  switch (method) {
    case Method::adaptive:
      return "adaptive";
    case Method::sign_rp_eq_storage:
      return "signrp-storage";
    case Method::sign_rp_eq_complexity:
      return "signrp-complexity";
    case Method::universal:
      return "universal";
    case Method::uncompressed:
      return "uncompressed";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (Method m : {Method::adaptive, Method::sign_rp_eq_storage, Method::sign_rp_eq_complexity, Method::universal,
                   Method::uncompressed}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void AnnConfig::validate() const {
  if (!(rho_true > 0.0 && rho_true < 1.0)) throw DomainError("rho_true must lie in (0, 1)");
  if (n_true < 1 || n_false < 1) throw DomainError("need at least one true and one false entry");
  if (n < 1 || m_pool < 1 || m < 1 || m > m_pool) throw DomainError("need n >= 1 and 1 <= m <= m_pool");
  if (!(delta_universal > 0.0)) throw DomainError("universal quantization step must be > 0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be > 0");
}

Dataset generate_dataset(const AnnConfig& cfg) {
  cfg.validate();
  Dataset data;
  const std::size_t total = cfg.n_true + cfg.n_false;
  {
    CounterStream stream(cfg.seed, StreamDomain::dataset, 0);
    data.query.resize(cfg.n);
    for (double& x : data.query) x = stream.gaussian();
  }
  data.entries.resize(total);
  data.is_true.resize(total);
  const double noise = std::sqrt(1.0 - cfg.rho_true * cfg.rho_true);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterStream stream(cfg.seed, StreamDomain::dataset, i + 1);
      auto& v = data.entries[i];
      v.resize(cfg.n);
      const bool neighbour = i < cfg.n_true;
      data.is_true[i] = neighbour ? 1 : 0;
      for (std::size_t j = 0; j < cfg.n; ++j) {
        const double g = stream.gaussian();
        v[j] = neighbour ? cfg.rho_true * data.query[j] + noise * g : g;
      }
    }
  });
  return data;
}

double contrast(std::span<const double> query, std::span<const std::vector<double>> entries,
                std::span<const std::uint8_t> is_true) {
  if (entries.size() != is_true.size()) throw ShapeError("labels do not match entries");
  const double qn = norm(query);
  if (qn == 0.0) throw DegenerateInputError("query is the zero vector");
  double closest_false = std::numeric_limits<double>::infinity();
  double farthest_true = -1.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != query.size()) throw ShapeError("entry dimension does not match query");
    const double en = norm(entries[i]);
    if (en == 0.0) throw DegenerateInputError("database entry is the zero vector");
    const double cosine = std::clamp(dot(query, entries[i]) / (qn * en), -1.0, 1.0);
    const double d = std::sqrt(2.0 - 2.0 * cosine);
    if (is_true[i]) {
      farthest_true = std::max(farthest_true, d);
    } else {
      closest_false = std::min(closest_false, d);
    }
  }
  if (farthest_true < 0.0 || std::isinf(closest_false)) {
    throw DomainError("contrast needs at least one true and one false entry");
  }
  return closest_false / farthest_true;
}

std::vector<RocPoint> roc_from_distances(std::span<const double> distances, std::span<const std::uint8_t> is_true,
                                         std::span<const double> thresholds) {
  if (distances.size() != is_true.size()) throw ShapeError("labels do not match distances");
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < distances.size(); ++i) (is_true[i] ? pos : neg).push_back(distances[i]);
  if (pos.empty() || neg.empty()) throw DomainError("ROC needs at least one true and one false entry");
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  std::vector<double> sorted_thresholds(thresholds.begin(), thresholds.end());
  std::sort(sorted_thresholds.begin(), sorted_thresholds.end());
  std::vector<RocPoint> points;
  points.reserve(sorted_thresholds.size());
  for (double t : sorted_thresholds) {
    const auto below = [t](const std::vector<double>& v) {
      return static_cast<double>(std::upper_bound(v.begin(), v.end(), t) - v.begin()) / static_cast<double>(v.size());
    };
    points.push_back({t, below(pos), below(neg)});
  }
  return points;
}

double auc(std::span<const RocPoint> points) {
  if (points.size() < 2) throw DomainError("AUC needs at least two ROC points");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(points.size() + 2);
  curve.emplace_back(0.0, 0.0);
  for (const auto& p : points) curve.emplace_back(p.p_false_alarm, p.p_detect);
  curve.emplace_back(1.0, 1.0);
  std::sort(curve.begin(), curve.end());
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].first - curve[i - 1].first) * (curve[i].second + curve[i - 1].second) / 2.0;
  }
  return area;
}

AnnExperiment::AnnExperiment(const AnnConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  spec_ = ProjectionSpec{cfg_.seed, cfg_.n, cfg_.m_pool, cfg_.sigma};
  data_ = generate_dataset(cfg_);
  rows_ = std::max(cfg_.m_pool, equal_storage_length(cfg_.m, cfg_.m_pool));
  const ProjectionSpec wide = spec_.with_pool(rows_);
  query_proj_ = project_leading(wide, data_.query, rows_);
  entry_proj_ = project_batch(wide, data_.entries, rows_);
}

std::size_t AnnExperiment::code_length(Method method) const {
  switch (method) {
    case Method::sign_rp_eq_storage:
      return equal_storage_length(cfg_.m, cfg_.m_pool);
    case Method::uncompressed:
      return cfg_.n;
    default:
      return cfg_.m;
  }
}

double AnnExperiment::storage_bits(Method method) const {
  switch (method) {
    case Method::adaptive:
      return adembed::storage_bits(cfg_.m, cfg_.m_pool);
    case Method::uncompressed:
      return 64.0 * static_cast<double>(cfg_.n);
    default:
      return static_cast<double>(code_length(method));
  }
}

std::vector<double> AnnExperiment::distances(Method method) const {
  const std::size_t count = data_.entries.size();
  std::vector<double> out(count);
  const std::span<const double> query_pool(query_proj_.data(), cfg_.m_pool);
  switch (method) {
    case Method::adaptive: {
      if (cfg_.reference == Reference::query) {
        const AdaptiveEmbedder e = build_adaptive_from_projections(spec_, query_pool, cfg_.m);
        parallel_for(count, [&](std::size_t begin, std::size_t end) {
          for (std::size_t i = begin; i < end; ++i) {
            out[i] = hamming(e.ref_code, embed_projections(e, entry_projections(i))).normalized;
          }
        });
      } else {
        parallel_for(count, [&](std::size_t begin, std::size_t end) {
          for (std::size_t i = begin; i < end; ++i) {
            const AdaptiveEmbedder e =
                build_adaptive_from_projections(spec_, entry_projections(i).first(cfg_.m_pool), cfg_.m);
            out[i] = hamming(e.ref_code, embed_projections(e, query_proj_)).normalized;
          }
        });
      }
      break;
    }
    case Method::sign_rp_eq_storage:
    case Method::sign_rp_eq_complexity: {
      const std::size_t len = code_length(method);
      const PackedCode q = sign_rp_from_projections(len, query_proj_);
      for (std::size_t i = 0; i < count; ++i) {
        out[i] = hamming(q, sign_rp_from_projections(len, entry_projections(i))).normalized;
      }
      break;
    }
    case Method::universal: {
      const UniversalParams params = make_universal_params(spec_, cfg_.m, cfg_.delta_universal);
      const PackedCode q = universal_from_projections(params, query_proj_);
      for (std::size_t i = 0; i < count; ++i) {
        out[i] = hamming(q, universal_from_projections(params, entry_projections(i))).normalized;
      }
      break;
    }
    case Method::uncompressed: {
      const double qn = norm(data_.query);
      for (std::size_t i = 0; i < count; ++i) {
        const double cosine = std::clamp(dot(data_.query, data_.entries[i]) / (qn * norm(data_.entries[i])), -1.0, 1.0);
        out[i] = std::acos(cosine) / std::numbers::pi;
      }
      break;
    }
  }
  return out;
}

std::vector<double> AnnExperiment::thresholds(Method method, std::span<const double> distances) const {
  std::vector<double> t;
  if (cfg_.threshold_steps > 0) {
    for (std::size_t k = 0; k <= cfg_.threshold_steps; ++k) {
      t.push_back(static_cast<double>(k) / static_cast<double>(cfg_.threshold_steps));
    }
    return t;
  }
  if (method == Method::uncompressed) {
    t.assign(distances.begin(), distances.end());
    t.push_back(0.0);
    t.push_back(1.0);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }
  const std::size_t len = code_length(method);
  for (std::size_t k = 0; k <= len; ++k) t.push_back(static_cast<double>(k) / static_cast<double>(len));
  return t;
}

RocResult AnnExperiment::run(Method method) const {
  RocResult result;
  result.method = method;
  result.code_length = code_length(method);
  result.storage_bits = storage_bits(method);
  const std::vector<double> d = distances(method);
  result.points = roc_from_distances(d, data_.is_true, thresholds(method, d));
  result.auc = auc(result.points);
  return result;
}

std::vector<RocPoint> run_roc(const AnnConfig& cfg, Method method) { return AnnExperiment(cfg).run(method).points; }

}  // namespace adembed::ann
