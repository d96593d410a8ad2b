#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contmatch/families.hpp"
#include "contmatch/lattice.hpp"
#include "contmatch/sketch.hpp"

namespace contmatch {

// Lattice supremum of a per-theta condition value.
struct ConditionEstimate {
  double sup_value = 0.0;
  Param argmax_theta;
  std::size_t argmax_index = 0;
  std::string lattice;                // e.g. "64x64 over [..]" or "12 points"
  std::optional<std::uint64_t> seed;  // sketch seed, when it has one
  std::vector<double> values;         // per lattice point
};

std::string describe(const Lattice& lattice);

// max |eig(I - (Phi V)^T (Phi V))| per point; requires M >= K.
ConditionEstimate estimate_c1(const SubspaceFamily& family, const GaussianSketch& phi,
                              const Lattice& lattice);

// ||(Phi V)^T Phi (h0 - V V^T h0)|| per point, h0 scaled to unit norm.
ConditionEstimate estimate_c2(const SubspaceFamily& family, const GaussianSketch& phi,
                              const Vector& h0, const Lattice& lattice);

// (3 d1 + 2 d2 + (d1 + d2)^2) / (1 - d1); PreconditionError unless
// 0 <= d1 < 1 and d2 >= 0.
double theorem1_bound(double delta1, double delta2);

// Everything a lattice sweep knows about one sketch, per lattice point.
struct SketchSweep {
  std::optional<std::uint64_t> seed;
  double y_norm_sq = 0.0;              // ||Phi h||^2
  std::vector<double> range_energy;    // ||Ptilde y||^2
  std::vector<double> c1;              // empty unless conditions were requested
  std::vector<double> c2;
};

struct LatticeSweep {
  Lattice lattice;
  std::vector<double> direct_energy;  // ||P h||^2, h unit norm
  std::vector<SketchSweep> sketches;
};

// Evaluates the direct energy once per lattice point and the compressed
// energy (and optionally C1/C2) for every sketch, building each basis once.
LatticeSweep sweep_lattice(const SubspaceFamily& family, const std::vector<GaussianSketch>& sketches,
                           const Vector& h0, const Lattice& lattice, bool conditions);

struct GapBoundReport {
  std::optional<std::uint64_t> seed;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double measured_sup = 0.0;  // sup |‖Ptilde y‖^2 - ‖P h‖^2|
  Param sup_theta;
  std::optional<double> bound;  // empty when delta1 >= 1
  bool vacuous = false;
  bool holds = false;  // measured_sup <= bound + 1e-9 (false when vacuous)
};

inline constexpr double kBoundSlack = 1e-9;

GapBoundReport gap_bound_from_sweep(const LatticeSweep& sweep, std::size_t sketch);

GapBoundReport verify_gap_bound(const SubspaceFamily& family, const GaussianSketch& phi,
                                const Vector& h0, const Lattice& lattice);

// Batch form: one report per sketch, bases shared.
std::vector<GapBoundReport> verify_gap_bounds(const SubspaceFamily& family,
                                              const std::vector<GaussianSketch>& sketches,
                                              const Vector& h0, const Lattice& lattice);

// Trial seeds are derive_seed({base_seed, M, trial}).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t m, std::size_t trial);

struct TrialOutcome {
  std::uint64_t seed = 0;
  double gap = 0.0;      // Ehat^2 - Ebar^2
  double sup_gap = 0.0;  // sup |‖Ptilde y‖^2 - ‖P h‖^2|
  std::size_t compressed_index = 0;
};

struct ScalingRow {
  std::size_t m = 0;
  std::size_t trials = 0;
  double median_gap = 0.0;
  double median_sup_gap = 0.0;
  double q10 = 0.0;  // quantiles of the sup-gap
  double q90 = 0.0;
  std::size_t direct_index = 0;  // lattice argmin of the direct match
  Param direct_theta;
  std::vector<TrialOutcome> outcomes;
};

// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double q);

// Lattice matches (no refinement) for every M and trial.
std::vector<ScalingRow> scaling_experiment(const SubspaceFamily& family, const Vector& h0,
                                           const std::vector<std::size_t>& m_list,
                                           std::size_t trials, std::uint64_t base_seed,
                                           const Lattice& lattice);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// max over sampled pairs of |‖Phi(x1 - x2)‖^2 / ‖x1 - x2‖^2 - 1| with
// x_i = V(theta_i) a_i, theta_i uniform over the domain (or the stored
// points), a_i uniform on the unit sphere.
double pairwise_embedding(const SubspaceFamily& family, const GaussianSketch& phi,
                          std::size_t pair_count, std::uint64_t seed);

// max over lattice points and vectors_per_point random unit coefficient
// vectors of |‖Phi V a‖^2 - 1|. Never exceeds the C1 value at the same point.
double single_vector_embedding(const SubspaceFamily& family, const GaussianSketch& phi,
                               const Lattice& lattice, std::size_t vectors_per_point,
                               std::uint64_t seed);

}  // namespace contmatch
