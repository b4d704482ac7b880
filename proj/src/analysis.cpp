#include "adembed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adembed/errors.hpp"
#include "adembed/special.hpp"

namespace adembed {

namespace {

// Relative slack on Cauchy-Schwarz / PSD checks for geometry computed in
// floating point.
constexpr double kGeomTol = 1e-12;
constexpr double kSqrt2 = std::numbers::sqrt2;

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be > 0");
}

// Outcome of sign(x) <= 0 for a deterministic x, with 0 as the tie.
double prob_nonpositive_constant(double x) {
  if (x > 0.0) return 0.0;
  if (x < 0.0) return 1.0;
  return 0.5;
}

}  // namespace

void PairGeometry::validate() const {
  if (!(norm_u > 0.0) || !(norm_v > 0.0)) throw DomainError("signal norms must be > 0");
  if (!std::isfinite(dot_uv)) throw DomainError("inner product must be finite");
  if (std::abs(dot_uv) > norm_u * norm_v * (1.0 + kGeomTol)) {
    throw DomainError("inner product violates Cauchy-Schwarz");
  }
}

void TripleGeometry::validate() const {
  PairGeometry{norm_u, norm_v, dot_uv}.validate();
  PairGeometry{norm_u, norm_w, dot_uw}.validate();
  PairGeometry{norm_v, norm_w, dot_vw}.validate();
  const double uu = norm_u * norm_u, vv = norm_v * norm_v, ww = norm_w * norm_w;
  const double det = uu * vv * ww + 2.0 * dot_uv * dot_uw * dot_vw - uu * dot_vw * dot_vw - vv * dot_uw * dot_uw -
                     ww * dot_uv * dot_uv;
  if (det < -kGeomTol * uu * vv * ww * 8.0) throw DomainError("Gram matrix is not positive semidefinite");
}

double mismatch_prob_given_tau(double tau, const PairGeometry& geom, double sigma) {
  check_sigma(sigma);
  geom.validate();
  const double uu = geom.norm_u * geom.norm_u;
  const double scale = uu * geom.norm_v * geom.norm_v;
  const double gap = scale - geom.dot_uv * geom.dot_uv;
  if (gap <= kGeomTol * scale) {
    if (tau == 0.0) return 0.5;
    return geom.dot_uv > 0.0 ? 0.0 : 1.0;
  }
  const double arg = -std::abs(tau) * geom.dot_uv / (kSqrt2 * sigma * geom.norm_u * std::sqrt(gap));
  return std::clamp(0.5 + 0.5 * special::erf(arg), 0.0, 1.0);
}

double expected_dh_adaptive(std::span<const double> ref_projections, const PairGeometry& geom, double sigma) {
  if (ref_projections.empty()) throw ShapeError("no reference projections");
  double total = 0.0;
  for (double tau : ref_projections) total += mismatch_prob_given_tau(tau, geom, sigma);
  return total / static_cast<double>(ref_projections.size());
}

double expected_dh_adaptive(const AdaptiveEmbedder& e, const PairGeometry& geom) {
  return expected_dh_adaptive(e.ref_projections, geom, e.spec.sigma);
}

double chernoff_tail(double mu, double eps, std::size_t m) {
  const double eps_max = 2.0 * std::numbers::e - 1.0;
  if (!(eps > 0.0) || eps > eps_max) throw DomainError("chernoff_tail: eps must lie in (0, 2e-1]");
  if (!(mu > 0.0) || mu > 1.0) throw DomainError("chernoff_tail: mu must lie in (0, 1]");
  if (m < 1) throw DomainError("chernoff_tail: m must be >= 1");
  const double total = static_cast<double>(m) * mu;
  return std::exp(-total * eps * eps / 2.0) + std::exp(-total * eps * eps / 4.0);
}

double chernoff_eps_for(double mu, std::size_t m, double delta) {
  if (!(delta > 0.0) || delta >= 2.0) throw DomainError("chernoff_eps_for: delta must lie in (0, 2)");
  if (!(mu > 0.0) || mu > 1.0 || m < 1) throw DomainError("chernoff_eps_for: need mu in (0, 1] and m >= 1");
  // With x = exp(-M eps^2 / 4): x^2 + x = delta.
  const double x = (-1.0 + std::sqrt(1.0 + 4.0 * delta)) / 2.0;
  return std::sqrt(-4.0 * std::log(x) / (static_cast<double>(m) * mu));
}

std::vector<double> poisson_binomial_pmf(std::span<const double> probs) {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw DomainError("poisson_binomial_pmf: probability " + std::to_string(i) + " outside [0, 1]");
    }
  }
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    for (std::size_t j = i + 1; j > 0; --j) pmf[j] = pmf[j] * (1.0 - p) + pmf[j - 1] * p;
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

double order_stat_expectation(std::size_t k, std::size_t N, double std_dev) {
  if (k < 1 || k > N) throw DomainError("order statistic rank k must lie in [1, N]");
  if (!(std_dev > 0.0)) throw DomainError("order statistic std must be > 0");
  const double position = (static_cast<double>(k) - kBlomAlpha) / (static_cast<double>(N) - 2.0 * kBlomAlpha + 1.0);
  return std_dev * special::inverse_normal_cdf(position);
}

double expected_dh_upper_bound(std::size_t m, std::size_t m_pool, const PairGeometry& geom, double sigma) {
  check_sigma(sigma);
  geom.validate();
  if (m < 1 || m > m_pool) throw DomainError("upper bound needs 1 <= m <= m_pool");
  if (geom.dot_uv < 0.0) throw DomainError("upper bound is stated for u.v >= 0");
  const double tau = order_stat_expectation(2 * (m_pool - m + 1), 2 * m_pool, sigma * geom.norm_u);
  return mismatch_prob_given_tau(tau, geom, sigma);
}

double mismatch_prob_three_party(double tau, const TripleGeometry& geom, double sigma) {
  check_sigma(sigma);
  geom.validate();
  const double uu = geom.norm_u * geom.norm_u;
  const double s2 = sigma * sigma;
  const double mean_v = tau * geom.dot_uv / uu;
  const double mean_w = tau * geom.dot_uw / uu;
  const double var_v = s2 * (geom.norm_v * geom.norm_v - geom.dot_uv * geom.dot_uv / uu);
  const double var_w = s2 * (geom.norm_w * geom.norm_w - geom.dot_uw * geom.dot_uw / uu);
  const double cov = s2 * (geom.dot_vw - geom.dot_uv * geom.dot_uw / uu);

  const bool flat_v = var_v <= kGeomTol * s2 * geom.norm_v * geom.norm_v;
  const bool flat_w = var_w <= kGeomTol * s2 * geom.norm_w * geom.norm_w;
  const double sd_v = flat_v ? 0.0 : std::sqrt(var_v);
  const double sd_w = flat_w ? 0.0 : std::sqrt(var_w);
  const double neg_v = flat_v ? prob_nonpositive_constant(mean_v) : special::normal_cdf(-mean_v / sd_v);
  const double neg_w = flat_w ? prob_nonpositive_constant(mean_w) : special::normal_cdf(-mean_w / sd_w);

  if (flat_v || flat_w) {
    // One side is deterministic, so the two signs are independent.
    return std::clamp(neg_v * (1.0 - neg_w) + (1.0 - neg_v) * neg_w, 0.0, 1.0);
  }
  const double rho = std::clamp(cov / (sd_v * sd_w), -1.0, 1.0);
  const double both_neg = special::bivariate_normal_cdf(-mean_v / sd_v, -mean_w / sd_w, rho);
  return std::clamp(neg_v + neg_w - 2.0 * both_neg, 0.0, 1.0);
}

double expected_dh_three_party(std::span<const double> ref_projections, const TripleGeometry& geom, double sigma) {
  if (ref_projections.empty()) throw ShapeError("no reference projections");
  double total = 0.0;
  for (double tau : ref_projections) total += mismatch_prob_three_party(tau, geom, sigma);
  return total / static_cast<double>(ref_projections.size());
}

double expected_dh_three_party(const AdaptiveEmbedder& e, const TripleGeometry& geom) {
  return expected_dh_three_party(e.ref_projections, geom, e.spec.sigma);
}

double sign_rp_expected_dh(const PairGeometry& geom) {
  geom.validate();
  const double c = std::clamp(geom.dot_uv / (geom.norm_u * geom.norm_v), -1.0, 1.0);
  return std::acos(c) / std::numbers::pi;
}

}  // namespace adembed
