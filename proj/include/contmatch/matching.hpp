#pragma once

#include <optional>
#include <vector>

#include "contmatch/families.hpp"
#include "contmatch/lattice.hpp"
#include "contmatch/sketch.hpp"

namespace contmatch {

// Uniform lattice search followed by shrink-and-refine rounds centred on
// the incumbent. Each round re-grids a box whose sides are 1/shrink_factor
// of the previous round's, clipped to the domain.
struct SearchPlan {
  std::vector<std::size_t> grid_resolution;
  int refinement_rounds = 2;
  double shrink_factor = 8.0;

  static SearchPlan uniform(std::size_t dims, std::size_t points_per_dim, int rounds = 2);
  void validate(std::size_t dims) const;
};

enum class ObjectiveKind { direct, compressed };

struct EnergySurface {
  ObjectiveKind kind = ObjectiveKind::direct;
  Lattice lattice;
  std::vector<double> values;
  std::size_t argmin = 0;
};

struct MatchResult {
  ObjectiveKind kind = ObjectiveKind::direct;
  Param theta_star;
  double objective = 0.0;          // residual energy at theta_star
  double relative_error_sq = 0.0;  // objective / ||input||^2
  double input_norm = 0.0;         // norm of h0 (direct) or y (compressed) before normalization
  std::size_t lattice_index = 0;   // argmin on the base lattice
  Param lattice_theta;
  std::vector<double> round_objectives;  // best objective after each round
  std::optional<EnergySurface> surface;  // base-lattice surface when requested
};

// Base lattice of a plan: the plan's grid over the domain, or the stored
// points of a discrete family.
Lattice search_lattice(const SubspaceFamily& family, const SearchPlan& plan);

// ||Q^T y||^2 for the thin QR factor Q of an M x K matrix A, i.e. the energy
// of y inside range(A). RankDeficientError when A is numerically rank
// deficient (always when M < K).
double range_energy(const Matrix& a, const Vector& y);

// ||y||^2 - ||y - Ptilde y||^2 with Ptilde the projector onto range(Phi V),
// computed by thin QR of the M x K matrix Phi V. Throws RankDeficientError
// when Phi V is numerically rank deficient (always when M < K).
double compressed_energy(const GaussianSketch& phi, const OrthoBasis& v, const Vector& y);

// ||h - P h||^2 for unit-norm h.
double direct_residual(const OrthoBasis& v, const Vector& h);

// Direct surface of ||h0 - P h0||^2 with h0 scaled to unit norm.
EnergySurface direct_surface(const SubspaceFamily& family, const Vector& h0,
                             const Lattice& lattice);
// Compressed surface of ||y - Ptilde y||^2 (y used as given).
EnergySurface compressed_surface(const SubspaceFamily& family, const GaussianSketch& phi,
                                 const Vector& y, const Lattice& lattice);

MatchResult match_direct(const SubspaceFamily& family, const Vector& h0, const SearchPlan& plan,
                         bool keep_surface = false);
MatchResult match_compressed(const SubspaceFamily& family, const GaussianSketch& phi,
                             const Vector& y, const SearchPlan& plan, bool keep_surface = false);

// ||P_bar h0||^2 - ||P_hat h0||^2 = Ehat^2 - Ebar^2 for h0 scaled to unit norm.
double approximation_gap(const SubspaceFamily& family, const Vector& h0, const Param& theta_bar,
                         const Param& theta_hat);

}  // namespace contmatch
