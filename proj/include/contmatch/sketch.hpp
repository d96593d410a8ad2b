#pragma once

#include <cstdint>
#include <optional>

#include "contmatch/linalg.hpp"
#include "contmatch/types.hpp"

namespace contmatch {

// M x N measurement matrix. Gaussian sketches hold i.i.d. N(0, 1/M) entries;
// entry (m, n) is a pure function of (seed, m, n), so construction order
// and thread count never change the matrix.
class GaussianSketch {
 public:
  GaussianSketch(std::size_t rows, std::size_t cols, std::uint64_t seed);

  // Explicit matrix (for isometries and other test operators); no seed.
  static GaussianSketch from_matrix(Matrix m);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  const Matrix& matrix() const { return m_; }

  // Unscaled standard-normal draw behind entry (row, col).
  static double standard_entry(std::uint64_t seed, std::size_t row, std::size_t col);

 private:
  GaussianSketch() = default;

  Matrix m_;
  std::optional<std::uint64_t> seed_;
};

GaussianSketch make_sketch(std::size_t rows, std::size_t cols, std::uint64_t seed);

Vector apply(const GaussianSketch& phi, const Vector& x);
Matrix apply(const GaussianSketch& phi, const Matrix& x);
// Phi V using only the support rows of V.
Matrix apply(const GaussianSketch& phi, const OrthoBasis& v);

}  // namespace contmatch
