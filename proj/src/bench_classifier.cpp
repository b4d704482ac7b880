#include "adembed/bench_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adembed/errors.hpp"
#include "adembed/io.hpp"
#include "adembed/linalg.hpp"
#include "adembed/parallel.hpp"
#include "adembed/rng.hpp"

namespace adembed::clf {

namespace {

constexpr std::string_view kFeatureMagic = "AEF1";
constexpr std::string_view kModelMagic = "AEW1";

std::uint32_t to_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) throw ShapeError(std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

template <typename Better>
std::size_t arg_best(std::size_t count, Better better) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (better(i, best)) best = i;
  }
  return best;
}

}  // namespace

void LinearModel::validate() const {
  if (k < 1 || weights.size() != k) throw ShapeError("model must hold k >= 1 weight vectors");
  for (const auto& w : weights) {
    if (w.size() != n) throw ShapeError("weight vectors must share dimension n");
    if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) {
      throw DegenerateInputError("weight vector is all zero");
    }
  }
}

void FeatureSet::validate(std::size_t k) const {
  if (features.size() != labels.size()) throw ShapeError("feature and label counts differ");
  for (const auto& x : features) {
    if (x.size() != n) throw ShapeError("features must share dimension n");
  }
  for (auto label : labels) {
    if (label >= k) throw IndexError("label " + std::to_string(label) + " outside [0, " + std::to_string(k) + ")");
  }
}

FeatureSet parse_features(std::span<const std::uint8_t> bytes, std::size_t* k_out) {
  io::ByteReader in(bytes);
  if (in.raw(4) != kFeatureMagic) throw FormatError("bad feature-file magic", 0);
  const std::size_t header_at = in.offset();
  const std::size_t count = in.u32();
  const std::size_t n = in.u32();
  const std::size_t k = in.u32();
  if (count == 0) throw FormatError("feature file declares N = 0", header_at);
  if (n == 0) throw FormatError("feature file declares n = 0", header_at + 4);
  if (k == 0) throw FormatError("feature file declares k = 0", header_at + 8);
  const std::size_t need = count * n * 4 + count * 4;
  if (in.remaining() < need) throw FormatError("feature file truncated", bytes.size());
  FeatureSet fs;
  fs.n = n;
  fs.features.assign(count, std::vector<double>(n));
  for (auto& x : fs.features) {
    for (double& v : x) v = in.f32();
  }
  fs.labels.resize(count);
  for (auto& label : fs.labels) {
    const std::size_t at = in.offset();
    label = in.u32();
    if (label >= k) throw FormatError("label " + std::to_string(label) + " outside [0, k)", at);
  }
  if (in.remaining() != 0) throw FormatError("trailing bytes after feature data", in.offset());
  if (k_out != nullptr) *k_out = k;
  return fs;
}

LinearModel parse_model(std::span<const std::uint8_t> bytes) {
  io::ByteReader in(bytes);
  if (in.raw(4) != kModelMagic) throw FormatError("bad model-file magic", 0);
  const std::size_t header_at = in.offset();
  LinearModel model;
  model.k = in.u32();
  model.n = in.u32();
  if (model.k == 0) throw FormatError("model file declares k = 0", header_at);
  if (model.n == 0) throw FormatError("model file declares n = 0", header_at + 4);
  if (in.remaining() < model.k * model.n * 4) throw FormatError("model file truncated", bytes.size());
  model.weights.assign(model.k, std::vector<double>(model.n));
  for (std::size_t i = 0; i < model.k; ++i) {
    const std::size_t at = in.offset();
    for (double& v : model.weights[i]) v = in.f32();
    if (std::all_of(model.weights[i].begin(), model.weights[i].end(), [](double x) { return x == 0.0; })) {
      throw FormatError("weight vector " + std::to_string(i) + " is all zero", at);
    }
  }
  if (in.remaining() != 0) throw FormatError("trailing bytes after model data", in.offset());
  return model;
}

std::vector<std::uint8_t> serialize_features(const FeatureSet& fs, std::size_t k) {
  fs.validate(k);
  io::ByteWriter out;
  out.raw(kFeatureMagic);
  out.u32(to_u32(fs.size(), "feature count"));
  out.u32(to_u32(fs.n, "feature dimension"));
  out.u32(to_u32(k, "class count"));
  for (const auto& x : fs.features) {
    for (double v : x) out.f32(static_cast<float>(v));
  }
  for (auto label : fs.labels) out.u32(label);
  return out.take();
}

std::vector<std::uint8_t> serialize_model(const LinearModel& model) {
  model.validate();
  io::ByteWriter out;
  out.raw(kModelMagic);
  out.u32(to_u32(model.k, "class count"));
  out.u32(to_u32(model.n, "model dimension"));
  for (const auto& w : model.weights) {
    for (double v : w) out.f32(static_cast<float>(v));
  }
  return out.take();
}

FeatureSet load_features(const std::string& path, std::size_t* k_out) {
  return parse_features(io::read_file(path), k_out);
}

LinearModel load_model(const std::string& path) { return parse_model(io::read_file(path)); }

void save_features(const std::string& path, const FeatureSet& fs, std::size_t k) {
  io::write_file(path, serialize_features(fs, k));
}

void save_model(const std::string& path, const LinearModel& model) { io::write_file(path, serialize_model(model)); }

std::size_t classify_uncompressed(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.n) throw ShapeError("feature dimension does not match model");
  std::vector<double> scores(model.k);
  for (std::size_t i = 0; i < model.k; ++i) scores[i] = dot(model.weights[i], x);
  return arg_best(model.k, [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::adaptive:
      return "adaptive";
    case Mode::sign_rp:
      return "signrp";
    case Mode::universal:
      return "universal";
  }
  return "unknown";
}

double CompressedModel::storage_bits_per_class() const {
  return mode == Mode::adaptive ? adembed::storage_bits(m, spec.m_pool) : static_cast<double>(m);
}

CompressedModel compress_model(const LinearModel& model, Mode mode, std::size_t m, const ProjectionSpec& spec,
                               double delta) {
  model.validate();
  spec.validate();
  if (spec.n != model.n) throw ShapeError("projection dimension does not match model");
  if (m < 1 || m > spec.m_pool) throw DomainError("code length must lie in [1, m_pool]");
  CompressedModel cm;
  cm.mode = mode;
  cm.m = m;
  cm.spec = spec;
  switch (mode) {
    case Mode::adaptive:
      cm.embedders.resize(model.k);
      for (std::size_t i = 0; i < model.k; ++i) cm.embedders[i] = build_adaptive(spec, model.weights[i], m);
      break;
    case Mode::sign_rp:
      for (const auto& w : model.weights) cm.codes.push_back(sign_rp_embed(spec, m, w));
      break;
    case Mode::universal:
      cm.universal = make_universal_params(spec, m, delta);
      for (const auto& w : model.weights) cm.codes.push_back(universal_embed(spec, m, cm.universal, w));
      break;
  }
  return cm;
}

std::size_t classify_compressed_projected(const CompressedModel& cm, std::span<const double> pool_projections) {
  if (pool_projections.size() < cm.rows_needed()) throw ShapeError("not enough projections for this model");
  const std::size_t k = cm.classes();
  std::vector<std::size_t> dist(k);
  switch (cm.mode) {
    case Mode::adaptive:
      for (std::size_t i = 0; i < k; ++i) {
        dist[i] = hamming_raw(cm.embedders[i].ref_code, embed_projections(cm.embedders[i], pool_projections));
      }
      break;
    case Mode::sign_rp: {
      const PackedCode y = sign_rp_from_projections(cm.m, pool_projections);
      for (std::size_t i = 0; i < k; ++i) dist[i] = hamming_raw(cm.codes[i], y);
      break;
    }
    case Mode::universal: {
      const PackedCode y = universal_from_projections(cm.universal, pool_projections);
      for (std::size_t i = 0; i < k; ++i) dist[i] = hamming_raw(cm.codes[i], y);
      break;
    }
  }
  return arg_best(k, [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
}

std::size_t classify_compressed(const CompressedModel& cm, std::span<const double> x) {
  if (x.size() != cm.spec.n) throw ShapeError("feature dimension does not match model");
  return classify_compressed_projected(cm, project_leading(cm.spec, x, cm.rows_needed()));
}

double evaluate(const LinearModel& model, const FeatureSet& fs) {
  fs.validate(model.k);
  if (fs.size() == 0) return 0.0;
  std::vector<std::uint8_t> correct(fs.size());
  parallel_for(fs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) correct[s] = classify_uncompressed(model, fs.features[s]) == fs.labels[s];
  });
  return static_cast<double>(std::count(correct.begin(), correct.end(), 1)) / static_cast<double>(fs.size());
}

double evaluate_projected(const CompressedModel& cm, std::span<const double> projections, std::size_t row_count,
                          std::span<const std::uint32_t> labels) {
  if (row_count < cm.rows_needed()) throw ShapeError("projections do not cover the rows this model reads");
  if (projections.size() != labels.size() * row_count) throw ShapeError("projection matrix does not match labels");
  if (labels.empty()) return 0.0;
  std::vector<std::uint8_t> correct(labels.size());
  parallel_for(labels.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      correct[s] = classify_compressed_projected(cm, projections.subspan(s * row_count, row_count)) == labels[s];
    }
  });
  return static_cast<double>(std::count(correct.begin(), correct.end(), 1)) / static_cast<double>(labels.size());
}

double evaluate(const CompressedModel& cm, const FeatureSet& fs) {
  fs.validate(cm.classes());
  if (fs.n != cm.spec.n) throw ShapeError("feature dimension does not match model");
  const std::size_t rows = cm.rows_needed();
  const std::vector<double> proj = project_batch(cm.spec, fs.features, rows);
  return evaluate_projected(cm, proj, rows, fs.labels);
}

SyntheticTask generate_synthetic_task(std::size_t k, std::size_t n, std::size_t count, double margin,
                                      std::uint64_t seed) {
  if (k < 2) throw DomainError("synthetic task needs k >= 2");
  if (n < 1) throw DomainError("synthetic task needs n >= 1");
  if (!(margin >= 0.0)) throw DomainError("margin must be >= 0");
  SyntheticTask task;
  task.model.k = k;
  task.model.n = n;
  task.model.weights.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    CounterStream stream(seed, StreamDomain::task, i);
    auto& w = task.model.weights[i];
    w.resize(n);
    for (double& x : w) x = stream.gaussian();
    const double len = norm(w);
    for (double& x : w) x /= len;
  }
  task.features.n = n;
  task.features.features.resize(count);
  task.features.labels.resize(count);
  const double noise = 1.0 / std::sqrt(static_cast<double>(n));
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      CounterStream stream(seed, StreamDomain::task, k + s);
      const auto label = static_cast<std::uint32_t>(stream.next_u64() % k);
      task.features.labels[s] = label;
      auto& x = task.features.features[s];
      x.resize(n);
      const auto& w = task.model.weights[label];
      for (std::size_t j = 0; j < n; ++j) x[j] = margin * w[j] + noise * stream.gaussian();
    }
  });
  return task;
}

}  // namespace adembed::clf
