#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace adembed {

/// Gaussian projection pool Phi in R^{m_pool x n} with N(0, sigma^2) entries.
/// Row i depends only on (master_seed, i, n, sigma); the matrix itself is
/// never stored.
struct ProjectionSpec {
  std::uint64_t master_seed = 0;
  std::size_t n = 1;
  std::size_t m_pool = 1;
  double sigma = 1.0;

  // Throws DomainError unless n >= 1, m_pool >= 1, sigma > 0.
  void validate() const;

  // Same rows, larger or smaller pool. Rows below both sizes coincide.
  ProjectionSpec with_pool(std::size_t pool) const;

  bool operator==(const ProjectionSpec&) const = default;
};

std::vector<double> gaussian_row(const ProjectionSpec& spec, std::size_t row_index);

// Writes row `row_index` into `out` (length n) without allocating.
void fill_gaussian_row(const ProjectionSpec& spec, std::size_t row_index, std::span<double> out);

// <Phi_rows[j], signal> for each requested row.
std::vector<double> project(const ProjectionSpec& spec, std::span<const double> signal,
                            std::span<const std::size_t> rows);

// Projections onto rows [0, count). Generates rows one at a time.
std::vector<double> project_leading(const ProjectionSpec& spec, std::span<const double> signal,
                                    std::size_t count);

/// A materialized subset of rows, for repeated projection of many signals.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(const ProjectionSpec& spec, std::span<const std::size_t> rows);

  static RowMatrix leading(const ProjectionSpec& spec, std::size_t count);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return n_; }
  std::span<const std::size_t> row_ids() const noexcept { return row_ids_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {values_.data() + r * n_, n_};
  }

  std::vector<double> apply(std::span<const double> signal) const;
  void apply_into(std::span<const double> signal, std::span<double> out) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ids_;
  std::vector<double> values_;
};

/// Projections of many signals onto rows [0, row_count), streamed in blocks
/// of rows so memory stays O(block * n + signals * row_count).
/// Result is row-major: out[s * row_count + i] = <Phi_i, signal_s>.
std::vector<double> project_batch(const ProjectionSpec& spec, std::span<const std::vector<double>> signals,
                                  std::size_t row_count);

}  // namespace adembed
