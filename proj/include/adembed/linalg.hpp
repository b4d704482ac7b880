#pragma once

#include <span>
#include <vector>

namespace adembed {

// Inner product with a fixed summation order (four interleaved partial
// sums). Every projection in the library goes through this routine so a
// value computed on different paths is bit-identical.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

double norm(std::span<const double> a) noexcept;

std::vector<double> scaled(std::span<const double> a, double alpha);

}  // namespace adembed
