#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "adembed/embedder.hpp"
#include "adembed/rng.hpp"

namespace adembed {

// Unit-norm direction drawn from stream (seed, domain, index).
std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed, StreamDomain domain, std::uint64_t index);

/// A unit-norm reference and its adaptive embedder, with the selected rows
/// materialized for repeated embedding of test signals.
struct ReferenceFixture {
  std::vector<double> reference;
  AdaptiveEmbedder embedder;
  RowMatrix rows;
};

ReferenceFixture make_reference_fixture(const ProjectionSpec& spec, std::size_t m, std::uint64_t reference_index = 0);

/// Mean normalized Hamming distance between the reference code and codes of
/// fresh unit-norm test signals v = c u + sqrt(1 - c^2) e, e a uniformly
/// random unit direction orthogonal to u, for each c in `dots`.
///
/// The same directions are reused across all values of c. Projections of v
/// onto the selected rows are formed from those of u and e, which equals
/// Phi_l v up to rounding.
std::vector<double> empirical_pair_distance(const ReferenceFixture& fixture, std::span<const double> dots,
                                            std::size_t trials, std::uint64_t seed);

/// Mean normalized Hamming distance between codes of two unit-norm test
/// signals for each (v.w, u.w) pair. w = b u + sqrt(1 - b^2) e2 and
/// v = c w + sqrt(1 - c^2) e3 with e2, e3 orthonormal and orthogonal to u,
/// so u.v = b c.
std::vector<double> empirical_three_party_distance(const ReferenceFixture& fixture,
                                                   std::span<const std::pair<double, double>> vw_uw,
                                                   std::size_t trials, std::uint64_t seed);

// Draws of the sum of independent Bernoulli(probs[i]) variables.
std::vector<std::size_t> sample_poisson_binomial(std::span<const double> probs, std::size_t draws, std::uint64_t seed);

}  // namespace adembed
