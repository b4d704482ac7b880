#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adembed/bitcode.hpp"
#include "adembed/io.hpp"
#include "adembed/projgen.hpp"

namespace adembed {

/// Adaptive embedding adapted to one reference signal u.
///
/// Keeps the m pool rows where |<Phi_i, u>| is largest. `locations` is
/// sorted ascending and bit j of every code produced by this embedder comes
/// from row locations[j]. The reference projections at those rows are kept
/// for the analytic predictors; they are not part of the storage figure
/// m + log2 C(m_pool, m).
struct AdaptiveEmbedder {
  ProjectionSpec spec;
  std::size_t m = 0;
  std::vector<std::size_t> locations;
  std::vector<double> ref_projections;
  PackedCode ref_code;

  bool operator==(const AdaptiveEmbedder&) const = default;
};

AdaptiveEmbedder build_adaptive(const ProjectionSpec& spec, std::span<const double> u, std::size_t m);

// Same as build_adaptive when the full projection vector y = Phi u (length
// m_pool) is already known.
AdaptiveEmbedder build_adaptive_from_projections(const ProjectionSpec& spec, std::span<const double> pool_projections,
                                                 std::size_t m);

PackedCode embed(const AdaptiveEmbedder& e, std::span<const double> v);

// Embeds a signal whose projections onto rows [0, k) are given, k >= m_pool.
PackedCode embed_projections(const AdaptiveEmbedder& e, std::span<const double> pool_projections);

// Rows at e.locations, materialized for repeated embedding.
RowMatrix location_rows(const AdaptiveEmbedder& e);

// Sign random projections over rows [0, m).
PackedCode sign_rp_embed(const ProjectionSpec& spec, std::size_t m, std::span<const double> v);
PackedCode sign_rp_from_projections(std::size_t m, std::span<const double> pool_projections);

/// Dithered periodic quantizer: bit j = floor((<Phi_j, v> + dither_j) / delta) mod 2.
struct UniversalParams {
  double delta = 2.0;
  std::vector<double> dither;
};

// Dither drawn i.i.d. uniform on [0, delta) from the spec's master seed.
UniversalParams make_universal_params(const ProjectionSpec& spec, std::size_t m, double delta);

PackedCode universal_embed(const ProjectionSpec& spec, std::size_t m, const UniversalParams& params,
                           std::span<const double> v);
PackedCode universal_from_projections(const UniversalParams& params, std::span<const double> pool_projections);

// Header (u32 n, u32 m_pool, u32 m, f64 sigma, u64 seed), locations as
// delta-encoded varints, m f64 reference projections, then the code.
void write_embedder(io::ByteWriter& out, const AdaptiveEmbedder& e);
AdaptiveEmbedder read_embedder(io::ByteReader& in);

}  // namespace adembed
