#include "adembed/projgen.hpp"

#include <algorithm>
#include <string>

#include "adembed/errors.hpp"
#include "adembed/linalg.hpp"
#include "adembed/parallel.hpp"
#include "adembed/rng.hpp"

namespace adembed {

namespace {

void check_row(const ProjectionSpec& spec, std::size_t row_index) {
  if (row_index >= spec.m_pool) {
    throw IndexError("row index " + std::to_string(row_index) + " outside pool of " +
                     std::to_string(spec.m_pool));
  }
}

void check_signal(const ProjectionSpec& spec, std::span<const double> signal) {
  if (signal.size() != spec.n) {
    throw ShapeError("signal has dimension " + std::to_string(signal.size()) + ", expected " +
                     std::to_string(spec.n));
  }
}

constexpr std::size_t kRowBlock = 32;

}  // namespace

void ProjectionSpec::validate() const {
  if (n < 1) throw DomainError("projection dimension n must be >= 1");
  if (m_pool < 1) throw DomainError("projection pool size must be >= 1");
  if (!(sigma > 0.0)) throw DomainError("projection sigma must be > 0");
}

ProjectionSpec ProjectionSpec::with_pool(std::size_t pool) const {
  ProjectionSpec out = *this;
  out.m_pool = pool;
  out.validate();
  return out;
}

void fill_gaussian_row(const ProjectionSpec& spec, std::size_t row_index, std::span<double> out) {
  spec.validate();
  check_row(spec, row_index);
  if (out.size() != spec.n) throw ShapeError("row buffer length does not match n");
  CounterStream stream(spec.master_seed, StreamDomain::projection_row, row_index);
  for (double& x : out) x = spec.sigma * stream.gaussian();
}

std::vector<double> gaussian_row(const ProjectionSpec& spec, std::size_t row_index) {
  std::vector<double> row(spec.n);
  fill_gaussian_row(spec, row_index, row);
  return row;
}

std::vector<double> project(const ProjectionSpec& spec, std::span<const double> signal,
                            std::span<const std::size_t> rows) {
  spec.validate();
  check_signal(spec, signal);
  for (std::size_t r : rows) check_row(spec, r);
  std::vector<double> out(rows.size());
  std::vector<double> buffer(spec.n);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    fill_gaussian_row(spec, rows[j], buffer);
    out[j] = dot(buffer, signal);
  }
  return out;
}

std::vector<double> project_leading(const ProjectionSpec& spec, std::span<const double> signal,
                                    std::size_t count) {
  spec.validate();
  check_signal(spec, signal);
  if (count > spec.m_pool) throw IndexError("leading row count exceeds pool");
  std::vector<double> out(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(spec.n);
    for (std::size_t i = begin; i < end; ++i) {
      fill_gaussian_row(spec, i, buffer);
      out[i] = dot(buffer, signal);
    }
  });
  return out;
}

RowMatrix::RowMatrix(const ProjectionSpec& spec, std::span<const std::size_t> rows)
    : n_(spec.n), row_ids_(rows.begin(), rows.end()), values_(rows.size() * spec.n) {
  spec.validate();
  for (std::size_t r : rows) check_row(spec, r);
  parallel_for(rows.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      fill_gaussian_row(spec, row_ids_[j], std::span<double>(values_.data() + j * n_, n_));
    }
  });
}

RowMatrix RowMatrix::leading(const ProjectionSpec& spec, std::size_t count) {
  std::vector<std::size_t> ids(count);
  for (std::size_t i = 0; i < count; ++i) ids[i] = i;
  return RowMatrix(spec, ids);
}

void RowMatrix::apply_into(std::span<const double> signal, std::span<double> out) const {
  if (signal.size() != n_) throw ShapeError("signal dimension does not match row matrix");
  if (out.size() != rows()) throw ShapeError("output length does not match row count");
  for (std::size_t j = 0; j < rows(); ++j) out[j] = dot(row(j), signal);
}

std::vector<double> RowMatrix::apply(std::span<const double> signal) const {
  std::vector<double> out(rows());
  apply_into(signal, out);
  return out;
}

std::vector<double> project_batch(const ProjectionSpec& spec, std::span<const std::vector<double>> signals,
                                  std::size_t row_count) {
  spec.validate();
  if (row_count > spec.m_pool) throw IndexError("batch row count exceeds pool");
  for (const auto& s : signals) check_signal(spec, s);
  const std::size_t count = signals.size();
  std::vector<double> out(count * row_count);
  const std::size_t blocks = (row_count + kRowBlock - 1) / kRowBlock;
  parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
    std::vector<double> block(kRowBlock * spec.n);
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t first = b * kRowBlock;
      const std::size_t last = std::min(row_count, first + kRowBlock);
      for (std::size_t i = first; i < last; ++i) {
        fill_gaussian_row(spec, i, std::span<double>(block.data() + (i - first) * spec.n, spec.n));
      }
      for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = first; i < last; ++i) {
          out[s * row_count + i] =
              dot(std::span<const double>(block.data() + (i - first) * spec.n, spec.n), signals[s]);
        }
      }
    }
  });
  return out;
}

}  // namespace adembed
