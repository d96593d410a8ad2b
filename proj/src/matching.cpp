#include "contmatch/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/core.h>

#include "contmatch/errors.hpp"
#include "contmatch/parallel.hpp"

namespace contmatch {

SearchPlan SearchPlan::uniform(std::size_t dims, std::size_t points_per_dim, int rounds) {
  SearchPlan plan;
  plan.grid_resolution.assign(dims, points_per_dim);
  plan.refinement_rounds = rounds;
  return plan;
}

void SearchPlan::validate(std::size_t dims) const {
  if (grid_resolution.size() != dims) {
    throw PreconditionError(fmt::format("search plan: {} resolutions for a {}-dimensional domain",
                                        grid_resolution.size(), dims));
  }
  for (std::size_t n : grid_resolution) {
    if (n < 2) throw PreconditionError("search plan: need at least 2 points per dimension");
  }
  if (refinement_rounds < 0) throw PreconditionError("search plan: negative refinement rounds");
  if (!(shrink_factor > 1.0)) throw PreconditionError("search plan: shrink factor must exceed 1");
}

Lattice search_lattice(const SubspaceFamily& family, const SearchPlan& plan) {
  if (family.discrete()) return Lattice::from_points(family.points());
  plan.validate(family.param_dim());
  return Lattice::regular(family.domain(), plan.grid_resolution);
}

double range_energy(const Matrix& a, const Vector& y) {
  const Eigen::Index k = a.cols();
  if (a.rows() < k) {
    throw RankDeficientError(fmt::format(
        "compressed energy: Phi V is {} x {}; M < K leaves it rank deficient", a.rows(), k));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  double ratio = 0.0;
  if (k == 1) {
    ratio = std::abs(r(0, 0)) > 0.0 ? 1.0 : 0.0;
  } else {
    Eigen::JacobiSVD<Matrix> svd(r);
    const auto& sv = svd.singularValues();
    ratio = sv(0) > 0.0 ? sv(k - 1) / sv(0) : 0.0;
  }
  if (ratio < kRankTolerance) throw RankDeficientError("compressed energy: Phi V is rank deficient");
  const Vector qty = (qr.householderQ().transpose() * y).head(k);
  return qty.squaredNorm();
}

double compressed_energy(const GaussianSketch& phi, const OrthoBasis& v, const Vector& y) {
  if (static_cast<std::size_t>(y.size()) != phi.rows()) {
    throw PreconditionError(fmt::format("compressed_energy: y has length {}, sketch has {} rows",
                                        y.size(), phi.rows()));
  }
  return range_energy(apply(phi, v), y);
}

double direct_residual(const OrthoBasis& v, const Vector& h) {
  return residual_projection(v, h).squaredNorm();
}

namespace {

Vector unit_signal(const Vector& h0, Eigen::Index expected, const char* what) {
  if (h0.size() != expected) {
    throw PreconditionError(
        fmt::format("{}: signal has length {}, family ambient dimension is {}", what, h0.size(),
                    expected));
  }
  const double norm = h0.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw PreconditionError(fmt::format("{}: signal must have positive finite norm", what));
  }
  return h0 / norm;
}

using Objective = std::function<double(const Param&)>;

std::vector<double> evaluate(const Lattice& lattice, const Objective& f) {
  std::vector<double> values(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t i) { values[i] = f(lattice[i]); });
  return values;
}

EnergySurface make_surface(ObjectiveKind kind, const Lattice& lattice, const Objective& f) {
  EnergySurface s;
  s.kind = kind;
  s.lattice = lattice;
  s.values = evaluate(lattice, f);
  s.argmin = lattice_argmin(lattice, s.values);
  return s;
}

MatchResult search(const SubspaceFamily& family, const SearchPlan& plan, ObjectiveKind kind,
                   const Objective& f, double input_norm, bool keep_surface) {
  const Lattice base = search_lattice(family, plan);
  EnergySurface surface = make_surface(kind, base, f);

  MatchResult out;
  out.kind = kind;
  out.input_norm = input_norm;
  out.lattice_index = surface.argmin;
  out.lattice_theta = base[surface.argmin];
  out.theta_star = out.lattice_theta;
  out.objective = surface.values[surface.argmin];
  out.round_objectives.push_back(out.objective);

  if (!family.discrete()) {
    const ParamBox& domain = family.domain();
    std::vector<double> side(domain.dim());
    for (std::size_t d = 0; d < domain.dim(); ++d) side[d] = domain.upper[d] - domain.lower[d];
    for (int round = 0; round < plan.refinement_rounds; ++round) {
      std::vector<double> lo(domain.dim());
      std::vector<double> hi(domain.dim());
      for (std::size_t d = 0; d < domain.dim(); ++d) {
        side[d] /= plan.shrink_factor;
        lo[d] = std::max(domain.lower[d], out.theta_star[d] - 0.5 * side[d]);
        hi[d] = std::min(domain.upper[d], out.theta_star[d] + 0.5 * side[d]);
      }
      const Lattice fine = Lattice::regular(ParamBox(lo, hi), plan.grid_resolution);
      const std::vector<double> values = evaluate(fine, f);
      const std::size_t best = lattice_argmin(fine, values);
      if (values[best] < out.objective ||
          (values[best] == out.objective && lex_less(fine[best], out.theta_star))) {
        out.objective = values[best];
        out.theta_star = fine[best];
      }
      out.round_objectives.push_back(out.objective);
    }
  }
  if (keep_surface) out.surface = std::move(surface);
  return out;
}

}  // namespace

EnergySurface direct_surface(const SubspaceFamily& family, const Vector& h0,
                             const Lattice& lattice) {
  const Vector h = unit_signal(h0, family.ambient_dim(), "direct_surface");
  return make_surface(ObjectiveKind::direct, lattice,
                      [&](const Param& theta) { return direct_residual(family.basis(theta), h); });
}

EnergySurface compressed_surface(const SubspaceFamily& family, const GaussianSketch& phi,
                                 const Vector& y, const Lattice& lattice) {
  if (phi.cols() != static_cast<std::size_t>(family.ambient_dim())) {
    throw PreconditionError("compressed_surface: sketch width differs from the ambient dimension");
  }
  const double yy = y.squaredNorm();
  return make_surface(ObjectiveKind::compressed, lattice, [&](const Param& theta) {
    return std::max(0.0, yy - compressed_energy(phi, family.basis(theta), y));
  });
}

MatchResult match_direct(const SubspaceFamily& family, const Vector& h0, const SearchPlan& plan,
                         bool keep_surface) {
  const Vector h = unit_signal(h0, family.ambient_dim(), "match_direct");
  MatchResult r = search(
      family, plan, ObjectiveKind::direct,
      [&](const Param& theta) { return direct_residual(family.basis(theta), h); }, h0.norm(),
      keep_surface);
  r.relative_error_sq = r.objective;
  return r;
}

MatchResult match_compressed(const SubspaceFamily& family, const GaussianSketch& phi,
                             const Vector& y, const SearchPlan& plan, bool keep_surface) {
  if (phi.cols() != static_cast<std::size_t>(family.ambient_dim())) {
    throw PreconditionError("match_compressed: sketch width differs from the ambient dimension");
  }
  if (static_cast<std::size_t>(y.size()) != phi.rows()) {
    throw PreconditionError("match_compressed: y length differs from the sketch height");
  }
  if (!y.allFinite()) throw PreconditionError("match_compressed: non-finite measurement");
  const double yy = y.squaredNorm();
  MatchResult r = search(
      family, plan, ObjectiveKind::compressed,
      [&](const Param& theta) {
        return std::max(0.0, yy - compressed_energy(phi, family.basis(theta), y));
      },
      std::sqrt(yy), keep_surface);
  r.relative_error_sq = yy > 0.0 ? r.objective / yy : 0.0;
  return r;
}

double approximation_gap(const SubspaceFamily& family, const Vector& h0, const Param& theta_bar,
                         const Param& theta_hat) {
  const Vector h = unit_signal(h0, family.ambient_dim(), "approximation_gap");
  return project_energy(family.basis(theta_bar), h) - project_energy(family.basis(theta_hat), h);
}

}  // namespace contmatch
