#pragma once

#include <optional>

#include "contmatch/types.hpp"

namespace contmatch {

// N x K matrix with orthonormal columns, plus the parameter it was built
// for. Rows outside [first_row, end_row) are exactly zero; products skip
// them.
class OrthoBasis {
 public:
  // Verifies ||M^T M - I|| <= 1e-10 and throws PreconditionError otherwise.
  explicit OrthoBasis(Matrix m, std::optional<Param> source_theta = std::nullopt);

  const Matrix& matrix() const { return m_; }
  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const std::optional<Param>& source_theta() const { return theta_; }

  Eigen::Index first_row() const { return first_; }
  Eigen::Index end_row() const { return end_; }
  Eigen::Index support_rows() const { return end_ - first_; }
  auto support() const { return m_.middleRows(first_, end_ - first_); }

  // V^T h, touching only the support rows.
  Vector coefficients(const Vector& h) const;

 private:
  struct Unchecked {};
  OrthoBasis(Unchecked, Matrix m, std::optional<Param> source_theta);
  void find_support();

  Matrix m_;
  std::optional<Param> theta_;
  Eigen::Index first_ = 0;
  Eigen::Index end_ = 0;

  friend OrthoBasis orthonormalize(const Matrix& b, std::optional<Param> source_theta);
};

// Threshold on sigma_min / sigma_max below which a basis counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

// Householder QR without pivoting, signs fixed so that diag(R) >= 0. Same
// input, same bits. Throws RankDeficientError when
// sigma_min(B) / sigma_max(B) < kRankTolerance.
OrthoBasis orthonormalize(const Matrix& b, std::optional<Param> source_theta = std::nullopt);

// ||V^T h||^2 = ||P h||^2.
double project_energy(const OrthoBasis& v, const Vector& h);

// h - V (V^T h).
Vector residual_projection(const OrthoBasis& v, const Vector& h);

// ||P1 - P2|| (operator norm). P1 - P2 is restricted to an orthonormal basis
// W of span(V1) + span(V2) and the largest-magnitude eigenvalue of the small
// symmetric matrix W^T (P1 - P2) W is returned.
double projector_distance(const OrthoBasis& v1, const OrthoBasis& v2);

// Same metric through principal angles: sqrt(1 - sigma_min(V1^T V2)^2) when
// the dimensions agree, 1 otherwise. Cheaper; loses accuracy below ~1e-8.
double projector_distance_by_angles(const OrthoBasis& v1, const OrthoBasis& v2);

}  // namespace contmatch
