#include "contmatch/sketch.hpp"

#include <cmath>

#include <fmt/core.h>

#include "contmatch/errors.hpp"
#include "contmatch/rng.hpp"

namespace contmatch {

double GaussianSketch::standard_entry(std::uint64_t seed, std::size_t row, std::size_t col) {
  return keyed_normal(derive_seed({seed, row, col}));
}

GaussianSketch::GaussianSketch(std::size_t rows, std::size_t cols, std::uint64_t seed)
    : seed_(seed) {
  if (rows == 0 || cols == 0) throw PreconditionError("sketch: dimensions must be positive");
  const auto m = static_cast<Eigen::Index>(rows);
  const auto n = static_cast<Eigen::Index>(cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  m_.resize(m, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) {
      m_(r, c) = scale * standard_entry(seed, static_cast<std::size_t>(r),
                                        static_cast<std::size_t>(c));
    }
  }
}

GaussianSketch GaussianSketch::from_matrix(Matrix m) {
  if (m.rows() == 0 || m.cols() == 0) throw PreconditionError("sketch: empty matrix");
  if (!m.allFinite()) throw PreconditionError("sketch: non-finite entry");
  GaussianSketch s;
  s.m_ = std::move(m);
  return s;
}

GaussianSketch make_sketch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  return GaussianSketch(rows, cols, seed);
}

Vector apply(const GaussianSketch& phi, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != phi.cols()) {
    throw PreconditionError(
        fmt::format("sketch apply: {} columns vs vector of length {}", phi.cols(), x.size()));
  }
  return phi.matrix() * x;
}

Matrix apply(const GaussianSketch& phi, const Matrix& x) {
  if (static_cast<std::size_t>(x.rows()) != phi.cols()) {
    throw PreconditionError(
        fmt::format("sketch apply: {} columns vs matrix with {} rows", phi.cols(), x.rows()));
  }
  return phi.matrix() * x;
}

Matrix apply(const GaussianSketch& phi, const OrthoBasis& v) {
  if (static_cast<std::size_t>(v.rows()) != phi.cols()) {
    throw PreconditionError(
        fmt::format("sketch apply: {} columns vs basis with {} rows", phi.cols(), v.rows()));
  }
  return phi.matrix().middleCols(v.first_row(), v.support_rows()) * v.support();
}

}  // namespace contmatch
