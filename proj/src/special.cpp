#include "adembed/special.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "adembed/errors.hpp"

namespace adembed::special {

namespace {

std::atomic<bool> g_erf_fault{false};

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

// Nodes on (-1, 1) by Newton iteration on P_N.
template <std::size_t N>
GaussLegendre<N> make_gauss_legendre() {
  GaussLegendre<N> rule;
  for (std::size_t i = 0; i < N; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= N; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Genz uses the negative half of each rule and reflects it.
struct HalfRule {
  const double* nodes;
  const double* weights;
  std::size_t count;
};

HalfRule half_rule(double abs_rho) {
  static const auto g6 = make_gauss_legendre<6>();
  static const auto g12 = make_gauss_legendre<12>();
  static const auto g20 = make_gauss_legendre<20>();
  if (abs_rho < 0.3) return {g6.nodes.data(), g6.weights.data(), 3};
  if (abs_rho < 0.75) return {g12.nodes.data(), g12.weights.data(), 6};
  return {g20.nodes.data(), g20.weights.data(), 10};
}

// P(X > h, Y > k) with correlation r.
double bvnu(double h, double k, double r) {
  const HalfRule rule = half_rule(std::abs(r));
  double hk = h * k;
  double bvn = 0.0;
  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r);
    for (std::size_t i = 0; i < rule.count; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double sn = std::sin(asr * (sign * rule.nodes[i] + 1.0) / 2.0);
        bvn += rule.weights[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return bvn * asr / (2.0 * kTwoPi) + normal_cdf(-h) * normal_cdf(-k);
  }
  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(r) < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) * (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * normal_cdf(-b / a) * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (std::size_t i = 0; i < rule.count; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double xs = std::pow(a * (sign * rule.nodes[i] + 1.0), 2);
        const double rs = std::sqrt(1.0 - xs);
        const double asr = -(bs / xs + hk) / 2.0;
        if (asr > -100.0) {
          bvn += a * rule.weights[i] * std::exp(asr) *
                 (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs - (1.0 + c * xs * (1.0 + d * xs)));
        }
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) return bvn + normal_cdf(-std::max(h, k));
  bvn = -bvn;
  if (k > h) {
    bvn += h < 0.0 ? normal_cdf(k) - normal_cdf(h) : normal_cdf(-h) - normal_cdf(-k);
  }
  return bvn;
}

}  // namespace

void set_erf_fault(bool enabled) { g_erf_fault.store(enabled); }
bool erf_fault_enabled() { return g_erf_fault.load(); }

double erf(double x) { return g_erf_fault.load(std::memory_order_relaxed) ? std::erf(0.6 * x) : std::erf(x); }

double erfc(double x) { return g_erf_fault.load(std::memory_order_relaxed) ? std::erfc(0.6 * x) : std::erfc(x); }

double normal_cdf(double x) { return 0.5 * erfc(-x * kInvSqrt2); }

double inverse_normal_cdf(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw DomainError("inverse_normal_cdf: p must lie in [0, 1]");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step on Phi(x) - p. Above the median the residual is formed
  // from upper-tail quantities so it keeps its relative precision.
  const double e = p > 0.5 ? (1.0 - p) - 0.5 * std::erfc(x * kInvSqrt2) : 0.5 * std::erfc(-x * kInvSqrt2) - p;
  const double u = e * std::sqrt(kTwoPi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double bivariate_normal_cdf(double x, double y, double rho) {
  if (std::isnan(rho) || std::abs(rho) > 1.0) throw DomainError("bivariate_normal_cdf: |rho| must be <= 1");
  if (std::isnan(x) || std::isnan(y)) throw DomainError("bivariate_normal_cdf: NaN argument");
  if (x == -std::numeric_limits<double>::infinity() || y == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return normal_cdf(y);
  if (y == std::numeric_limits<double>::infinity()) return normal_cdf(x);
  const double p = bvnu(-x, -y, rho);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace adembed::special
