#include "contmatch/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "contmatch/errors.hpp"

namespace contmatch {

namespace {

void require_rows(const OrthoBasis& v, Eigen::Index rows, const char* what) {
  if (v.rows() != rows) {
    throw PreconditionError(
        fmt::format("{}: basis has {} rows, vector has {}", what, v.rows(), rows));
  }
}

}  // namespace

OrthoBasis::OrthoBasis(Matrix m, std::optional<Param> source_theta)
    : m_(std::move(m)), theta_(std::move(source_theta)) {
  if (m_.cols() < 1 || m_.rows() < m_.cols()) {
    throw PreconditionError("orthobasis: need 1 <= K <= N");
  }
  const Matrix gram = m_.transpose() * m_;
  const double err = (gram - Matrix::Identity(m_.cols(), m_.cols())).norm();
  if (!(err <= 1e-10)) {
    throw PreconditionError(fmt::format("orthobasis: ||M^T M - I|| = {:.3g}", err));
  }
  find_support();
}

OrthoBasis::OrthoBasis(Unchecked, Matrix m, std::optional<Param> source_theta)
    : m_(std::move(m)), theta_(std::move(source_theta)) {
  find_support();
}

void OrthoBasis::find_support() {
  const Eigen::Index n = m_.rows();
  first_ = 0;
  while (first_ < n && (m_.row(first_).array() == 0.0).all()) ++first_;
  end_ = n;
  while (end_ > first_ && (m_.row(end_ - 1).array() == 0.0).all()) --end_;
}

Vector OrthoBasis::coefficients(const Vector& h) const {
  return support().transpose() * h.segment(first_, end_ - first_);
}

OrthoBasis orthonormalize(const Matrix& b, std::optional<Param> source_theta) {
  const Eigen::Index n = b.rows();
  const Eigen::Index k = b.cols();
  if (k < 1 || k > n) throw PreconditionError("orthonormalize: need 1 <= K <= N");
  if (!b.allFinite()) throw PreconditionError("orthonormalize: non-finite entry");

  Eigen::Index first = 0;
  while (first < n && (b.row(first).array() == 0.0).all()) ++first;
  Eigen::Index end = n;
  while (end > first && (b.row(end - 1).array() == 0.0).all()) --end;
  if (end - first < k) throw RankDeficientError("orthonormalize: basis is rank deficient");

  const Matrix block = b.middleRows(first, end - first);
  Eigen::HouseholderQR<Matrix> qr(block);
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  Eigen::JacobiSVD<Matrix> svd(r);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(k - 1) / sv(0) < kRankTolerance) {
    throw RankDeficientError(fmt::format(
        "orthonormalize: basis is rank deficient (sigma_min/sigma_max = {:.3g})",
        sv(0) > 0.0 ? sv(k - 1) / sv(0) : 0.0));
  }

  Matrix q = qr.householderQ() * Matrix::Identity(end - first, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  Matrix full = Matrix::Zero(n, k);
  full.middleRows(first, end - first) = q;
  return OrthoBasis(OrthoBasis::Unchecked{}, std::move(full), std::move(source_theta));
}

double project_energy(const OrthoBasis& v, const Vector& h) {
  require_rows(v, h.size(), "project_energy");
  return v.coefficients(h).squaredNorm();
}

Vector residual_projection(const OrthoBasis& v, const Vector& h) {
  require_rows(v, h.size(), "residual_projection");
  Vector out = h;
  out.segment(v.first_row(), v.support_rows()).noalias() -= v.support() * v.coefficients(h);
  return out;
}

double projector_distance(const OrthoBasis& v1, const OrthoBasis& v2) {
  require_rows(v1, v2.rows(), "projector_distance");
  const Eigen::Index first = std::min(v1.first_row(), v2.first_row());
  const Eigen::Index end = std::max(v1.end_row(), v2.end_row());
  const Eigen::Index rows = end - first;
  const Eigen::Index k1 = v1.cols();
  const Eigen::Index k2 = v2.cols();
  if (rows < k1 + k2) {
    // Tiny ambient support; fall back to the full row range.
    return projector_distance_by_angles(v1, v2);
  }

  Matrix both(rows, k1 + k2);
  both.leftCols(k1) = v1.matrix().middleRows(first, rows);
  both.rightCols(k2) = v2.matrix().middleRows(first, rows);
  // W spans a superset of both column spaces even when the concatenation is
  // rank deficient, which is all the restriction needs.
  Eigen::HouseholderQR<Matrix> qr(both);
  const Matrix w = qr.householderQ() * Matrix::Identity(rows, k1 + k2);
  const Matrix a = w.transpose() * both.leftCols(k1);
  const Matrix c = w.transpose() * both.rightCols(k2);
  const Matrix diff = a * a.transpose() - c * c.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(diff, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double projector_distance_by_angles(const OrthoBasis& v1, const OrthoBasis& v2) {
  require_rows(v1, v2.rows(), "projector_distance_by_angles");
  if (v1.cols() != v2.cols()) return 1.0;
  const Eigen::Index first = std::max(v1.first_row(), v2.first_row());
  const Eigen::Index end = std::min(v1.end_row(), v2.end_row());
  if (end <= first) return 1.0;
  const Matrix c = v1.matrix().middleRows(first, end - first).transpose() *
                   v2.matrix().middleRows(first, end - first);
  double smin = 0.0;
  if (c.cols() == 1) {
    smin = std::abs(c(0, 0));
  } else {
    Eigen::JacobiSVD<Matrix> svd(c);
    smin = svd.singularValues()(c.cols() - 1);
  }
  return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

}  // namespace contmatch
