#include "contmatch/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "contmatch/errors.hpp"

namespace contmatch {

namespace atoms {

namespace {

// Gaussian envelopes are truncated where they drop below exp(-40.5).
constexpr double kGaussianReach = 9.0;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw PreconditionError(fmt::format("{} must be finite and positive", what));
  }
}

}  // namespace

Waveform gaussian(double sigma) {
  require_positive(sigma, "gaussian pulse: sigma");
  const double amp = std::pow(std::numbers::pi, -0.25) / std::sqrt(sigma);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return Waveform([=](double t) { return amp * std::exp(-t * t * inv); },
                  -kGaussianReach * sigma, kGaussianReach * sigma);
}

Waveform square(double sigma) {
  require_positive(sigma, "square pulse: sigma");
  const double h = 0.5 * sigma;
  const double height = 1.0 / std::sqrt(sigma);
  return Waveform([=](double t) { return (t >= -h && t <= h) ? height : 0.0; }, -h, h,
                  [=](double t) { return (std::clamp(t, -h, h) + h) * height; });
}

double gabor_c1(double sigma, double omega) {
  return std::sqrt(2.0 / (sigma * std::sqrt(std::numbers::pi) *
                          (1.0 + std::exp(-omega * omega * sigma * sigma))));
}

double gabor_c2(double sigma, double omega) {
  return std::sqrt(2.0 / (sigma * std::sqrt(std::numbers::pi) *
                          (1.0 - std::exp(-omega * omega * sigma * sigma))));
}

Waveform gabor_cos(double sigma, double omega) {
  require_positive(sigma, "gabor atom: sigma");
  const double c = gabor_c1(sigma, omega);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return Waveform([=](double t) { return c * std::exp(-t * t * inv) * std::cos(omega * t); },
                  -kGaussianReach * sigma, kGaussianReach * sigma);
}

Waveform gabor_sin(double sigma, double omega) {
  require_positive(sigma, "gabor atom: sigma");
  require_positive(omega, "gabor sine atom: omega");
  const double c = gabor_c2(sigma, omega);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return Waveform([=](double t) { return c * std::exp(-t * t * inv) * std::sin(omega * t); },
                  -kGaussianReach * sigma, kGaussianReach * sigma);
}

double lot_envelope(double sigma, double t) {
  const double x = t / sigma;
  double g = 0.0;
  if (x < -0.25) {
    g = 0.0;
  } else if (x < 0.25) {
    g = std::sin(0.25 * std::numbers::pi * (1.0 + 4.0 * x));
  } else if (x < 0.75) {
    g = 1.0;
  } else if (x < 1.25) {
    g = std::sin(0.25 * std::numbers::pi * (5.0 - 4.0 * x));
  }
  return std::sqrt(2.0 / sigma) * g;
}

double lot_frequency(double sigma, int k) {
  return std::numbers::pi / sigma * (static_cast<double>(k) - 0.5);
}

Waveform lot(double sigma, int k) {
  require_positive(sigma, "lot atom: sigma");
  if (k < 1) throw PreconditionError("lot atom: index k must be >= 1");
  const double w = lot_frequency(sigma, k);
  return Waveform([=](double t) { return lot_envelope(sigma, t) * std::cos(w * t); },
                  -0.25 * sigma, 1.25 * sigma);
}

Waveform raised_cosine(double beta, double cycles, double phase) {
  require_positive(beta, "raised cosine: beta");
  return Waveform(
      [=](double t) {
        if (std::abs(t) > beta) return 0.0;
        return (1.0 + std::cos(std::numbers::pi * t / beta)) *
               std::cos(2.0 * std::numbers::pi * cycles * t / beta + phase);
      },
      -beta, beta);
}

}  // namespace atoms

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::gaussian_pulse: return "gaussian";
    case FamilyKind::square_pulse: return "square";
    case FamilyKind::gabor: return "gabor";
    case FamilyKind::lot: return "lot";
    case FamilyKind::tabulated: return "tabulated";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "gaussian" || text == "gaussian_pulse") return FamilyKind::gaussian_pulse;
  if (text == "square" || text == "square_pulse") return FamilyKind::square_pulse;
  if (text == "gabor") return FamilyKind::gabor;
  if (text == "lot") return FamilyKind::lot;
  if (text == "tabulated") return FamilyKind::tabulated;
  throw PreconditionError(fmt::format("unknown family kind '{}'", text));
}

namespace {

ParamBox bounding_box(const std::vector<Param>& points) {
  const std::size_t d = points.front().size();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const Param& p : points) {
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(hi[i] > lo[i])) {
      lo[i] -= 0.5;
      hi[i] += 0.5;
    }
  }
  return ParamBox(std::move(lo), std::move(hi));
}

}  // namespace

SubspaceFamily::SubspaceFamily(FamilyParams params, ParamBox domain, int subspace_dim,
                               SampleGrid ambient, BasisFn basis)
    : params_(std::move(params)),
      domain_(std::move(domain)),
      k_(subspace_dim),
      n_(static_cast<Eigen::Index>(ambient.count)),
      grid_(ambient),
      fn_(std::move(basis)) {
  if (k_ < 1 || k_ > n_) throw PreconditionError("subspace family: need 1 <= K <= N");
  if (!fn_) throw PreconditionError("subspace family: empty basis map");
  params_.subspace_dim = k_;
}

SubspaceFamily::SubspaceFamily(FamilyParams params, std::vector<Param> points,
                               std::vector<OrthoBasis> bases)
    : params_(std::move(params)), points_(std::move(points)), bases_(std::move(bases)) {
  if (points_.empty()) throw PreconditionError("tabulated family: no grid points");
  if (points_.size() != bases_.size()) {
    throw PreconditionError("tabulated family: one basis per grid point required");
  }
  const std::size_t d = points_.front().size();
  if (d == 0) throw PreconditionError("tabulated family: empty parameter vectors");
  for (const Param& p : points_) {
    if (p.size() != d) throw PreconditionError("tabulated family: ragged parameter vectors");
  }
  n_ = bases_.front().rows();
  k_ = static_cast<int>(bases_.front().cols());
  for (const OrthoBasis& b : bases_) {
    if (b.rows() != n_ || b.cols() != k_) {
      throw PreconditionError("tabulated family: bases disagree in shape");
    }
  }
  domain_ = bounding_box(points_);
  grid_ = SampleGrid(0.0, 1.0, static_cast<std::size_t>(std::max<Eigen::Index>(n_, 2)));
  params_.kind = FamilyKind::tabulated;
  params_.subspace_dim = k_;
}

std::size_t SubspaceFamily::nearest_point(const Param& theta) const {
  if (!discrete()) throw PreconditionError("nearest_point: family is not discrete");
  if (theta.size() != param_dim()) {
    throw PreconditionError("nearest_point: parameter dimension mismatch");
  }
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double diff = points_[i][j] - theta[j];
      acc += diff * diff;
    }
    if (acc < best_d) {
      best_d = acc;
      best = i;
    }
  }
  return best;
}

OrthoBasis SubspaceFamily::basis(const Param& theta) const {
  if (discrete()) return bases_[nearest_point(theta)];
  if (!domain_.contains(theta)) {
    throw PreconditionError("subspace family: parameter outside the domain");
  }
  return fn_(theta);
}

namespace {

Matrix sampled_columns(const std::vector<Waveform>& atoms, const SampleGrid& grid,
                       double shift) {
  Matrix m(static_cast<Eigen::Index>(grid.count), static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = sample(atoms[j], grid, shift).values();
  }
  return m;
}

void require_range(double lo, double hi, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw PreconditionError(fmt::format("{}: need a finite range with lo < hi", what));
  }
}

}  // namespace

SubspaceFamily gaussian_pulse_family(double sigma, double shift_lo, double shift_hi,
                                     const SampleGrid& grid) {
  require_range(shift_lo, shift_hi, "gaussian pulse family");
  Waveform atom = atoms::gaussian(sigma);
  require_on_grid(atom, grid, shift_lo, "gaussian pulse family");
  require_on_grid(atom, grid, shift_hi, "gaussian pulse family");
  FamilyParams params{FamilyKind::gaussian_pulse, sigma, {shift_lo, shift_hi}, {}, 1, "gaussian", false};
  return SubspaceFamily(std::move(params), ParamBox({shift_lo}, {shift_hi}), 1, grid,
                        [atom, grid](const Param& theta) {
                          return orthonormalize(sampled_columns({atom}, grid, theta[0]), theta);
                        });
}

SubspaceFamily square_pulse_family(double sigma, double shift_lo, double shift_hi,
                                   const SampleGrid& grid) {
  require_range(shift_lo, shift_hi, "square pulse family");
  Waveform atom = atoms::square(sigma);
  require_on_grid(atom, grid, shift_lo, "square pulse family");
  require_on_grid(atom, grid, shift_hi, "square pulse family");
  FamilyParams params{FamilyKind::square_pulse, sigma, {shift_lo, shift_hi}, {}, 1, "square", false};
  return SubspaceFamily(std::move(params), ParamBox({shift_lo}, {shift_hi}), 1, grid,
                        [atom, grid](const Param& theta) {
                          return orthonormalize(sampled_columns({atom}, grid, theta[0]), theta);
                        });
}

SubspaceFamily gabor_family(double sigma, double tau_lo, double tau_hi, double omega_lo,
                            double omega_hi, const SampleGrid& grid) {
  require_range(tau_lo, tau_hi, "gabor family (shift)");
  require_range(omega_lo, omega_hi, "gabor family (frequency)");
  if (!(omega_lo * sigma > 1.0)) {
    throw PreconditionError(fmt::format(
        "gabor family: need omega_lo * sigma > 1 (got {} * {} = {})", omega_lo, sigma,
        omega_lo * sigma));
  }
  Waveform probe = atoms::gabor_cos(sigma, omega_lo);
  require_on_grid(probe, grid, tau_lo, "gabor family");
  require_on_grid(probe, grid, tau_hi, "gabor family");
  FamilyParams params{FamilyKind::gabor, sigma, {tau_lo, tau_hi}, {omega_lo, omega_hi}, 2, "gabor", false};
  return SubspaceFamily(
      std::move(params), ParamBox({tau_lo, omega_lo}, {tau_hi, omega_hi}), 2, grid,
      [sigma, grid](const Param& theta) {
        const std::vector<Waveform> cols{atoms::gabor_cos(sigma, theta[1]),
                                         atoms::gabor_sin(sigma, theta[1])};
        return orthonormalize(sampled_columns(cols, grid, theta[0]), theta);
      });
}

SubspaceFamily lot_family(double sigma, int k, double shift_lo, double shift_hi,
                          const SampleGrid& grid) {
  require_range(shift_lo, shift_hi, "lot family");
  if (k < 2) throw PreconditionError("lot family: need K >= 2");
  std::vector<Waveform> cols;
  for (int i = 1; i <= k; ++i) cols.push_back(atoms::lot(sigma, i));
  require_on_grid(cols.front(), grid, shift_lo, "lot family");
  require_on_grid(cols.front(), grid, shift_hi, "lot family");
  FamilyParams params{FamilyKind::lot, sigma, {shift_lo, shift_hi}, {}, k, "lot", false};
  return SubspaceFamily(std::move(params), ParamBox({shift_lo}, {shift_hi}), k, grid,
                        [cols, grid](const Param& theta) {
                          return orthonormalize(sampled_columns(cols, grid, theta[0]), theta);
                        });
}

Matrix real_embedding(const ComplexMatrix& g) {
  if (!g.allFinite()) throw PreconditionError("real_embedding: non-finite entry");
  const Eigen::Index n = g.rows();
  const Eigen::Index k = g.cols();
  Matrix out(2 * n, 2 * k);
  out.topLeftCorner(n, k) = g.real();
  out.topRightCorner(n, k) = -g.imag();
  out.bottomLeftCorner(n, k) = g.imag();
  out.bottomRightCorner(n, k) = g.real();
  return out;
}

}  // namespace contmatch
