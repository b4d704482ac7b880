#include "adembed/linalg.hpp"

#include <cmath>

namespace adembed {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += pa[i] * pb[i];
    s1 += pa[i + 1] * pb[i + 1];
    s2 += pa[i + 2] * pb[i + 2];
    s3 += pa[i + 3] * pb[i + 3];
  }
  for (; i < n; ++i) s0 += pa[i] * pb[i];
  return (s0 + s1) + (s2 + s3);
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

std::vector<double> scaled(std::span<const double> a, double alpha) {
  std::vector<double> out(a.begin(), a.end());
  for (double& x : out) x *= alpha;
  return out;
}

}  // namespace adembed
