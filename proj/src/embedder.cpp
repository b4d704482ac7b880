#include "adembed/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adembed/errors.hpp"
#include "adembed/linalg.hpp"
#include "adembed/rng.hpp"

namespace adembed {

namespace {

void check_length(const ProjectionSpec& spec, std::size_t m) {
  if (m < 1 || m > spec.m_pool) {
    throw DomainError("code length m=" + std::to_string(m) + " must lie in [1, " + std::to_string(spec.m_pool) + "]");
  }
}

}  // namespace

AdaptiveEmbedder build_adaptive_from_projections(const ProjectionSpec& spec, std::span<const double> pool_projections,
                                                 std::size_t m) {
  spec.validate();
  check_length(spec, m);
  if (pool_projections.size() != spec.m_pool) throw ShapeError("projection vector length does not match m_pool");
  if (std::all_of(pool_projections.begin(), pool_projections.end(), [](double y) { return y == 0.0; })) {
    throw DegenerateInputError("reference projections are all zero; top-m selection is undefined");
  }

  std::vector<std::size_t> order(spec.m_pool);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Larger magnitude first; equal magnitudes keep the smaller row index.
  auto by_magnitude = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(pool_projections[a]);
    const double mb = std::abs(pool_projections[b]);
    return ma != mb ? ma > mb : a < b;
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m - 1), order.end(), by_magnitude);
  order.resize(m);
  std::sort(order.begin(), order.end());

  AdaptiveEmbedder e;
  e.spec = spec;
  e.m = m;
  e.locations = std::move(order);
  e.ref_projections.resize(m);
  for (std::size_t j = 0; j < m; ++j) e.ref_projections[j] = pool_projections[e.locations[j]];
  e.ref_code = from_signs(e.ref_projections);
  return e;
}

AdaptiveEmbedder build_adaptive(const ProjectionSpec& spec, std::span<const double> u, std::size_t m) {
  spec.validate();
  check_length(spec, m);
  if (u.size() != spec.n) throw ShapeError("reference dimension does not match n");
  if (std::all_of(u.begin(), u.end(), [](double x) { return x == 0.0; })) {
    throw DegenerateInputError("reference signal is the zero vector");
  }
  const std::vector<double> y = project_leading(spec, u, spec.m_pool);
  return build_adaptive_from_projections(spec, y, m);
}

PackedCode embed(const AdaptiveEmbedder& e, std::span<const double> v) {
  return from_signs(project(e.spec, v, e.locations));
}

PackedCode embed_projections(const AdaptiveEmbedder& e, std::span<const double> pool_projections) {
  if (pool_projections.size() < e.spec.m_pool) throw ShapeError("projection vector shorter than m_pool");
  PackedCode code(e.m);
  for (std::size_t j = 0; j < e.m; ++j) {
    if (pool_projections[e.locations[j]] > 0.0) code.set(j, true);
  }
  return code;
}

RowMatrix location_rows(const AdaptiveEmbedder& e) { return RowMatrix(e.spec, e.locations); }

PackedCode sign_rp_embed(const ProjectionSpec& spec, std::size_t m, std::span<const double> v) {
  spec.validate();
  check_length(spec, m);
  return from_signs(project_leading(spec, v, m));
}

PackedCode sign_rp_from_projections(std::size_t m, std::span<const double> pool_projections) {
  if (m < 1 || pool_projections.size() < m) throw ShapeError("not enough projections for the requested code length");
  return from_signs(pool_projections.first(m));
}

UniversalParams make_universal_params(const ProjectionSpec& spec, std::size_t m, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("quantization step delta must be > 0");
  UniversalParams params;
  params.delta = delta;
  params.dither.resize(m);
  CounterStream stream(spec.master_seed, StreamDomain::dither, 0);
  for (double& d : params.dither) d = delta * stream.uniform();
  return params;
}

PackedCode universal_from_projections(const UniversalParams& params, std::span<const double> pool_projections) {
  const std::size_t m = params.dither.size();
  if (!(params.delta > 0.0)) throw DomainError("quantization step delta must be > 0");
  if (m < 1 || pool_projections.size() < m) throw ShapeError("not enough projections for the requested code length");
  PackedCode code(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double cell = std::floor((pool_projections[j] + params.dither[j]) / params.delta);
    if (std::fmod(std::abs(cell), 2.0) == 1.0) code.set(j, true);
  }
  return code;
}

PackedCode universal_embed(const ProjectionSpec& spec, std::size_t m, const UniversalParams& params,
                           std::span<const double> v) {
  spec.validate();
  check_length(spec, m);
  if (params.dither.size() != m) throw ShapeError("dither length does not match m");
  return universal_from_projections(params, project_leading(spec, v, m));
}

void write_embedder(io::ByteWriter& out, const AdaptiveEmbedder& e) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (e.spec.n > kMax || e.spec.m_pool > kMax) throw ShapeError("embedder dimensions exceed the u32 header fields");
  out.u32(static_cast<std::uint32_t>(e.spec.n));
  out.u32(static_cast<std::uint32_t>(e.spec.m_pool));
  out.u32(static_cast<std::uint32_t>(e.m));
  out.f64(e.spec.sigma);
  out.u64(e.spec.master_seed);
  std::size_t previous = 0;
  for (std::size_t j = 0; j < e.m; ++j) {
    out.varint(j == 0 ? e.locations[0] : e.locations[j] - previous);
    previous = e.locations[j];
  }
  for (double y : e.ref_projections) out.f64(y);
  write_code(out, e.ref_code);
}

AdaptiveEmbedder read_embedder(io::ByteReader& in) {
  const std::size_t start = in.offset();
  AdaptiveEmbedder e;
  e.spec.n = in.u32();
  e.spec.m_pool = in.u32();
  e.m = in.u32();
  e.spec.sigma = in.f64();
  e.spec.master_seed = in.u64();
  try {
    e.spec.validate();
    check_length(e.spec, e.m);
  } catch (const std::exception& err) {
    throw FormatError(std::string("invalid embedder header: ") + err.what(), start);
  }
  e.locations.resize(e.m);
  for (std::size_t j = 0; j < e.m; ++j) {
    const std::size_t at = in.offset();
    const std::uint64_t step = in.varint();
    if (j > 0 && step == 0) throw FormatError("locations are not strictly increasing", at);
    e.locations[j] = j == 0 ? step : e.locations[j - 1] + step;
    if (e.locations[j] >= e.spec.m_pool) throw FormatError("location outside the projection pool", at);
  }
  e.ref_projections.resize(e.m);
  for (double& y : e.ref_projections) y = in.f64();
  const std::size_t code_at = in.offset();
  e.ref_code = read_code(in);
  if (e.ref_code != from_signs(e.ref_projections)) {
    throw FormatError("reference code disagrees with reference projections", code_at);
  }
  return e;
}

}  // namespace adembed
