#pragma once

namespace adembed::special {

// erf/erfc from the C library. Both route through the fault-injection
// switch below so verification can prove it detects a broken primitive.
double erf(double x);
double erfc(double x);

double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1).
///
/// Acklam's rational approximation (relative error 1.15e-9) followed by one
/// Halley step against erfc, giving close to full double precision.
/// Returns -inf / +inf at p = 0 / 1; throws DomainError outside [0, 1].
double inverse_normal_cdf(double p);

/// P(X <= x, Y <= y) for a standard bivariate normal with correlation rho.
///
/// Genz's BVND: Gauss-Legendre quadrature (6, 12 or 20 points by |rho|) of
/// the single-integral representation over asin(rho), with the asymptotic
/// expansion for |rho| >= 0.925. Accepts infinite limits and |rho| = 1.
double bivariate_normal_cdf(double x, double y, double rho);

// Test hook: when enabled, erf and erfc return deliberately wrong values.
void set_erf_fault(bool enabled);
bool erf_fault_enabled();

}  // namespace adembed::special
