#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "contmatch/linalg.hpp"
#include "contmatch/signal.hpp"
#include "contmatch/types.hpp"

namespace contmatch {

// Continuous-time atoms used by the built-in families. All have unit L2(R)
// norm except the raised-cosine test signal.
namespace atoms {

// pi^(-1/4) sigma^(-1/2) exp(-t^2 / 2 sigma^2).
Waveform gaussian(double sigma);

// 1/sqrt(sigma) on [-sigma/2, sigma/2]; sampled by cell averages.
Waveform square(double sigma);

// C1(w) exp(-t^2/2s^2) cos(w t) and C2(w) exp(-t^2/2s^2) sin(w t).
Waveform gabor_cos(double sigma, double omega);
Waveform gabor_sin(double sigma, double omega);
double gabor_c1(double sigma, double omega);
double gabor_c2(double sigma, double omega);

// Lapped-orthogonal-transform envelope g(t), supported on [-sigma/4, 5 sigma/4].
double lot_envelope(double sigma, double t);
// Modulation frequency (pi / sigma)(k - 1/2), k >= 1.
double lot_frequency(double sigma, int k);
// g(t) cos(w_k t).
Waveform lot(double sigma, int k);

// (1 + cos(pi t / beta)) cos(2 pi cycles t / beta + phase) on |t| <= beta.
// With beta = 5/128 and cycles = 5 the carrier sits at 2 pi * 128 rad/s.
Waveform raised_cosine(double beta, double cycles, double phase);

}  // namespace atoms

enum class FamilyKind { gaussian_pulse, square_pulse, gabor, lot, tabulated };

std::string_view to_string(FamilyKind kind);
// Accepts "gaussian", "square", "gabor", "lot", "tabulated" (and the enum spellings).
FamilyKind parse_family_kind(std::string_view text);

// Construction parameters, kept for reports and closed-form regularity.
struct FamilyParams {
  FamilyKind kind = FamilyKind::gaussian_pulse;
  double sigma = 0.0;
  std::vector<double> shift_range;  // [lo, hi]
  std::vector<double> omega_range;  // gabor only, rad/s
  int subspace_dim = 1;
  std::string name;
  bool complex_origin = false;
};

// theta -> orthonormal basis of S_theta. Either continuous over a box, or
// discrete over an explicit list of parameter points (tabulated families).
class SubspaceFamily {
 public:
  using BasisFn = std::function<OrthoBasis(const Param&)>;

  SubspaceFamily(FamilyParams params, ParamBox domain, int subspace_dim, SampleGrid ambient,
                 BasisFn basis);

  SubspaceFamily(FamilyParams params, std::vector<Param> points, std::vector<OrthoBasis> bases);

  const FamilyParams& params() const { return params_; }
  const ParamBox& domain() const { return domain_; }
  std::size_t param_dim() const { return domain_.dim(); }
  int subspace_dim() const { return k_; }
  Eigen::Index ambient_dim() const { return n_; }
  const SampleGrid& ambient_grid() const { return grid_; }

  bool discrete() const { return !points_.empty(); }
  const std::vector<Param>& points() const { return points_; }

  // Continuous families: theta must lie in the domain. Discrete families:
  // the nearest stored point is used.
  OrthoBasis basis(const Param& theta) const;

  // Index of the stored point nearest to theta (discrete families only).
  std::size_t nearest_point(const Param& theta) const;

 private:
  FamilyParams params_;
  ParamBox domain_;
  int k_ = 1;
  Eigen::Index n_ = 0;
  SampleGrid grid_;
  BasisFn fn_;
  std::vector<Param> points_;
  std::vector<OrthoBasis> bases_;
};

// K = 1 family of shifted Gaussian pulses, theta in [shift_lo, shift_hi].
SubspaceFamily gaussian_pulse_family(double sigma, double shift_lo, double shift_hi,
                                     const SampleGrid& grid);

// K = 1 family of shifted square pulses.
SubspaceFamily square_pulse_family(double sigma, double shift_lo, double shift_hi,
                                   const SampleGrid& grid);

// K = 2, D = 2 family over (tau, omega); requires omega_lo * sigma > 1.
// Columns: cosine atom first, then the (orthogonalized) sine atom.
SubspaceFamily gabor_family(double sigma, double tau_lo, double tau_hi, double omega_lo,
                            double omega_hi, const SampleGrid& grid);

// K-dimensional lapped-orthogonal-transform family (K >= 2), column k-1
// holds atom k.
SubspaceFamily lot_family(double sigma, int k, double shift_lo, double shift_hi,
                          const SampleGrid& grid);

using ComplexMatrix = Eigen::MatrixXcd;

// [[Re G, -Im G], [Im G, Re G]].
Matrix real_embedding(const ComplexMatrix& g);

}  // namespace contmatch
