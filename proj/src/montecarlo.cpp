#include "adembed/montecarlo.hpp"

#include <cmath>

#include "adembed/bitcode.hpp"
#include "adembed/errors.hpp"
#include "adembed/linalg.hpp"
#include "adembed/parallel.hpp"
#include "adembed/rng.hpp"

namespace adembed {

namespace {

std::vector<double> gaussian_vector(std::size_t n, CounterStream& stream) {
  std::vector<double> g(n);
  for (double& x : g) x = stream.gaussian();
  return g;
}

// Removes the components along each (unit) basis vector, then normalizes.
void orthonormalize_against(std::vector<double>& g, std::span<const std::vector<double>> basis) {
  for (const auto& b : basis) {
    const double c = dot(g, b);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= c * b[i];
  }
  const double len = norm(g);
  if (len == 0.0) throw DegenerateInputError("random direction collapsed during orthogonalization");
  for (double& x : g) x /= len;
}

std::size_t mismatches(std::span<const double> a, std::span<const double> b) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < a.size(); ++j) count += (a[j] > 0.0) != (b[j] > 0.0);
  return count;
}

void check_unit_dots(std::span<const double> dots) {
  for (double c : dots) {
    if (!(c >= -1.0 && c <= 1.0)) throw DomainError("inner products of unit signals must lie in [-1, 1]");
  }
}

}  // namespace

std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed, StreamDomain domain, std::uint64_t index) {
  CounterStream stream(seed, domain, index);
  std::vector<double> g = gaussian_vector(n, stream);
  orthonormalize_against(g, {});
  return g;
}

ReferenceFixture make_reference_fixture(const ProjectionSpec& spec, std::size_t m, std::uint64_t reference_index) {
  ReferenceFixture f;
  f.reference = random_unit_vector(spec.n, spec.master_seed, StreamDomain::reference, reference_index);
  f.embedder = build_adaptive(spec, f.reference, m);
  f.rows = location_rows(f.embedder);
  return f;
}

std::vector<double> empirical_pair_distance(const ReferenceFixture& fixture, std::span<const double> dots,
                                            std::size_t trials, std::uint64_t seed) {
  check_unit_dots(dots);
  if (trials == 0) throw DomainError("need at least one trial");
  const auto& e = fixture.embedder;
  const std::size_t m = e.m;
  std::vector<std::size_t> counts(trials * dots.size());
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<double> direction_proj(m), test_proj(m);
    const std::vector<double> basis[] = {fixture.reference};
    for (std::size_t t = begin; t < end; ++t) {
      CounterStream stream(seed, StreamDomain::trial, t);
      std::vector<double> direction = gaussian_vector(e.spec.n, stream);
      orthonormalize_against(direction, basis);
      fixture.rows.apply_into(direction, direction_proj);
      for (std::size_t k = 0; k < dots.size(); ++k) {
        const double c = dots[k];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < m; ++j) test_proj[j] = c * e.ref_projections[j] + s * direction_proj[j];
        counts[t * dots.size() + k] = mismatches(e.ref_projections, test_proj);
      }
    }
  });
  std::vector<double> mean(dots.size(), 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t k = 0; k < dots.size(); ++k) mean[k] += static_cast<double>(counts[t * dots.size() + k]);
  }
  for (double& x : mean) x /= static_cast<double>(trials) * static_cast<double>(m);
  return mean;
}

std::vector<double> empirical_three_party_distance(const ReferenceFixture& fixture,
                                                   std::span<const std::pair<double, double>> vw_uw,
                                                   std::size_t trials, std::uint64_t seed) {
  for (const auto& [c, b] : vw_uw) {
    const double both[] = {c, b};
    check_unit_dots(both);
  }
  if (trials == 0) throw DomainError("need at least one trial");
  const auto& e = fixture.embedder;
  const std::size_t m = e.m;
  const std::size_t points = vw_uw.size();
  std::vector<std::size_t> counts(trials * points);
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<double> p2(m), p3(m), proj_w(m), proj_v(m);
    for (std::size_t t = begin; t < end; ++t) {
      CounterStream stream(seed, StreamDomain::trial, t);
      std::vector<std::vector<double>> basis{fixture.reference};
      std::vector<double> e2 = gaussian_vector(e.spec.n, stream);
      orthonormalize_against(e2, basis);
      basis.push_back(e2);
      std::vector<double> e3 = gaussian_vector(e.spec.n, stream);
      orthonormalize_against(e3, basis);
      fixture.rows.apply_into(e2, p2);
      fixture.rows.apply_into(e3, p3);
      for (std::size_t k = 0; k < points; ++k) {
        const auto [c, b] = vw_uw[k];
        const double sb = std::sqrt(std::max(0.0, 1.0 - b * b));
        const double sc = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < m; ++j) {
          proj_w[j] = b * e.ref_projections[j] + sb * p2[j];
          proj_v[j] = c * proj_w[j] + sc * p3[j];
        }
        counts[t * points + k] = mismatches(proj_v, proj_w);
      }
    }
  });
  std::vector<double> mean(points, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t k = 0; k < points; ++k) mean[k] += static_cast<double>(counts[t * points + k]);
  }
  for (double& x : mean) x /= static_cast<double>(trials) * static_cast<double>(m);
  return mean;
}

std::vector<std::size_t> sample_poisson_binomial(std::span<const double> probs, std::size_t draws, std::uint64_t seed) {
  std::vector<std::size_t> out(draws);
  parallel_for(draws, [&](std::size_t begin, std::size_t end) {
    for (std::size_t d = begin; d < end; ++d) {
      CounterStream stream(seed, StreamDomain::trial, d);
      std::size_t successes = 0;
      for (double p : probs) successes += stream.uniform() < p;
      out[d] = successes;
    }
  });
  return out;
}

}  // namespace adembed
