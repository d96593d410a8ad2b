#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contmatch/families.hpp"
#include "contmatch/lattice.hpp"

namespace contmatch {

// Greedy farthest-point cover of a probe lattice under the projector
// distance. The center sequence does not depend on epsilon (first center
// is lattice point 0, then always the point farthest from the current
// centers, ties to the lower index), so counts for several resolutions
// come from one pass and are automatically antitone in epsilon.
struct CoverTrace {
  std::vector<std::size_t> centers;  // in selection order
  std::vector<double> radii;         // radii[k] = covering radius of the first k+1 centers
  double max_adjacent_distance = 0;  // largest distance between lattice neighbours (regular probes)

  // Number of centers needed to reach radius <= epsilon.
  std::size_t count_for(double epsilon) const;
};

// Runs the greedy cover until the radius drops to min(epsilons). Regular
// probe lattices of continuous families must be dense enough that
// neighbouring points are within min(epsilons)/4; PreconditionError
// otherwise.
CoverTrace greedy_cover(const SubspaceFamily& family, const Lattice& probe,
                        const std::vector<double>& epsilons);

std::size_t covering_count(const SubspaceFamily& family, double epsilon, const Lattice& probe);
std::vector<std::size_t> covering_counts(const SubspaceFamily& family,
                                         const std::vector<double>& epsilons,
                                         const Lattice& probe);

// N <= N0 * eps^-alpha.
struct RegularityFit {
  double n0 = 1.0;
  double alpha = 0.0;
};

// Least squares on log count = log N0 + alpha log(1/eps) with alpha >= 0,
// after which N0 is raised just enough that N0 eps^-alpha >= count for every
// supplied pair. Needs at least 3 pairs.
RegularityFit fit_regularity(const std::vector<double>& epsilons,
                             const std::vector<std::size_t>& counts);

// log(8^alpha N0^2) + 2.
double delta_constant(double n0, double alpha);

struct RegularityReport {
  std::vector<double> epsilons;
  std::vector<std::size_t> counts;
  double fitted_n0 = 1.0;
  double fitted_alpha = 0.0;
  double delta = 2.0;
};

RegularityReport make_regularity_report(std::vector<double> epsilons,
                                        std::vector<std::size_t> counts);

// Closed-form covering constants for the built-in families.
enum class RegularityKind { gaussian_pulse, sobolev_pulse, square_pulse, gabor, lot };

struct RegularityInputs {
  RegularityKind kind = RegularityKind::gaussian_pulse;
  double sigma = 0.0;
  double span = 0.0;      // T, length of the shift interval
  double sobolev = 0.0;   // L (sobolev_pulse only)
  double omega_lo = 0.0;  // gabor only
  double omega_hi = 0.0;
  int subspace_dim = 0;   // lot only
};

struct AnalyticRegularity {
  double n0 = 1.0;
  double alpha = 0.0;
  double delta = 2.0;  // always delta_constant(n0, alpha)
  // Additive form delta = scale_term + additive, where scale_term is the
  // log expression in the family's own variables (e.g. 2 log(T/sigma)).
  double scale_term = 0.0;
  double additive = 0.0;
  // Additive constant printed in the original derivation when it differs
  // from the one implied by (n0, alpha); see `note`.
  std::optional<double> printed_additive;
  std::string note;

  double bound(double epsilon) const;  // n0 * epsilon^-alpha
};

AnalyticRegularity analytic_regularity(const RegularityInputs& in);
// Built-in family (not tabulated); the shift span comes from its parameters.
AnalyticRegularity analytic_regularity(const FamilyParams& family);

// Hoelder modulus ||P1 - P2|| <= beta |theta1 - theta2|^rho along one
// parameter coordinate, with rho restricted to {1, 1/2}.
struct HolderFit {
  std::size_t dimension = 0;
  double beta = 0.0;
  double rho = 1.0;
  std::size_t pairs = 0;
  double min_slack = 0.0;         // min over pairs of beta s^rho - d (zero at the tight pair)
  double median_tightness = 0.0;  // median of d / (beta s^rho)
};

// For each parameter coordinate, samples pair_count pairs that differ only in
// that coordinate by at most max_separation and picks rho in {1, 1/2}
// whose bound is tighter on the median pair (ties favour rho = 1).
std::vector<HolderFit> holder_fit(const SubspaceFamily& family, std::size_t pair_count,
                                  double max_separation, std::uint64_t seed);

}  // namespace contmatch
