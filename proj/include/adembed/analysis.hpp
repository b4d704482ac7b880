#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "adembed/embedder.hpp"

namespace adembed {

/// Norms and inner product of a reference u and test signal v.
struct PairGeometry {
  double norm_u = 1.0;
  double norm_v = 1.0;
  double dot_uv = 0.0;

  // Throws DomainError on non-positive norms or a Cauchy-Schwarz violation.
  void validate() const;
  static PairGeometry unit(double dot_uv) { return {1.0, 1.0, dot_uv}; }
};

/// Reference u with two test signals v and w.
struct TripleGeometry {
  double norm_u = 1.0;
  double norm_v = 1.0;
  double norm_w = 1.0;
  double dot_uv = 0.0;
  double dot_uw = 0.0;
  double dot_vw = 0.0;

  // Throws DomainError unless the Gram matrix is positive semidefinite.
  void validate() const;
  static TripleGeometry unit(double dot_uv, double dot_uw, double dot_vw) {
    return {1.0, 1.0, 1.0, dot_uv, dot_uw, dot_vw};
  }
};

struct PredictionPoint {
  double abscissa = 0.0;
  double expected_dh = 0.0;
  // (epsilon, tail bound) when a concentration figure was requested.
  std::optional<std::pair<double, double>> chernoff_eps_bound;
};

/// Probability that the bit of v differs from the bit of u at a row where
/// the reference projection was observed to be tau:
///   1/2 + 1/2 erf(-|tau| u.v / (sqrt(2) sigma |u| sqrt(|u|^2 |v|^2 - (u.v)^2))).
/// Collinear u, v short-circuit to 0 (u.v > 0) or 1 (u.v < 0); tau = 0 gives 1/2.
double mismatch_prob_given_tau(double tau, const PairGeometry& geom, double sigma);

// Mean mismatch probability over the reference projections.
double expected_dh_adaptive(std::span<const double> ref_projections, const PairGeometry& geom, double sigma);
double expected_dh_adaptive(const AdaptiveEmbedder& e, const PairGeometry& geom);

/// Chernoff two-sided tail bound exp(-M eps^2/2) + exp(-M eps^2/4) with
/// M = m * mu the mean of the unnormalized distance. Requires
/// 0 < eps <= 2e - 1 and 0 < mu <= 1.
double chernoff_tail(double mu, double eps, std::size_t m);

// Smallest eps for which chernoff_tail(mu, eps, m) <= delta. May exceed 2e - 1
// (the bound's validity range) when m * mu is small.
double chernoff_eps_for(double mu, std::size_t m, double delta);

// PMF of the number of successes among independent Bernoulli(probs[i]).
std::vector<double> poisson_binomial_pmf(std::span<const double> probs);

// Blom / Harter plotting-position estimate of E[k-th smallest of N draws of
// N(0, std^2)]: std * F^{-1}((k - 0.375) / (N - 0.75 + 1)).
double order_stat_expectation(std::size_t k, std::size_t N, double std_dev);

inline constexpr double kBlomAlpha = 0.375;

/// Reference-free bound on the expected adaptive distance: the mismatch
/// probability at tau = E[2(m_pool - m + 1)-th order statistic of 2 m_pool
/// draws of N(0, sigma^2 |u|^2)]. Requires u.v >= 0.
double expected_dh_upper_bound(std::size_t m, std::size_t m_pool, const PairGeometry& geom, double sigma);

/// P(sign(<Phi_i, v>) != sign(<Phi_i, w>) | <Phi_i, u> = tau).
double mismatch_prob_three_party(double tau, const TripleGeometry& geom, double sigma);

double expected_dh_three_party(std::span<const double> ref_projections, const TripleGeometry& geom, double sigma);
double expected_dh_three_party(const AdaptiveEmbedder& e, const TripleGeometry& geom);

// Collision law of sign random projections: theta / pi.
double sign_rp_expected_dh(const PairGeometry& geom);

}  // namespace adembed
