#pragma once

// Brute-force reference computations with explicit N x N operators.
// Only for small N.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "contmatch/linalg.hpp"
#include "contmatch/rng.hpp"

namespace oracle {

using contmatch::Matrix;
using contmatch::Vector;

inline Matrix projector(const Matrix& v) { return v * v.transpose(); }

inline double spectral_norm_sym(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

inline double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double projector_distance(const Matrix& v1, const Matrix& v2) {
  return spectral_norm_sym(projector(v1) - projector(v2));
}

// ||P - P Phi^T Phi P||
inline double c1(const Matrix& v, const Matrix& phi) {
  const Matrix p = projector(v);
  return spectral_norm(p - p * phi.transpose() * phi * p);
}

// ||P Phi^T Phi (I - P) h||
inline double c2(const Matrix& v, const Matrix& phi, const Vector& h) {
  const Matrix p = projector(v);
  const Matrix i = Matrix::Identity(p.rows(), p.cols());
  return (p * phi.transpose() * phi * (i - p) * h).norm();
}

inline Matrix random_matrix(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols) {
  contmatch::CounterRng rng(seed);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

inline Matrix random_orthonormal(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(seed, rows, cols));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
