#include "contmatch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "contmatch/errors.hpp"
#include "contmatch/parallel.hpp"
#include "contmatch/rng.hpp"

namespace contmatch {

namespace {

// Nonzero row block of a basis; keeps probe sets small.
struct Block {
  Eigen::Index first = 0;
  Matrix rows;
};

Block compact(const OrthoBasis& v) { return {v.first_row(), v.support()}; }

// sqrt(1 - sigma_min(V1^T V2)^2) restricted to the common rows.
double angle_distance(const Block& a, const Block& b) {
  if (a.rows.cols() != b.rows.cols()) return 1.0;
  const Eigen::Index lo = std::max(a.first, b.first);
  const Eigen::Index hi = std::min(a.first + a.rows.rows(), b.first + b.rows.rows());
  if (hi <= lo) return 1.0;
  const Matrix c = a.rows.middleRows(lo - a.first, hi - lo).transpose() *
                   b.rows.middleRows(lo - b.first, hi - lo);
  double s;
  if (c.size() == 1) {
    s = std::abs(c(0, 0));
  } else {
    s = Eigen::JacobiSVD<Matrix>(c).singularValues().minCoeff();
  }
  return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, s * s)));
}

std::vector<Block> probe_blocks(const SubspaceFamily& family, const Lattice& probe) {
  std::vector<Block> blocks(probe.size());
  parallel_for(probe.size(), [&](std::size_t i) { blocks[i] = compact(family.basis(probe[i])); });
  return blocks;
}

double max_adjacent(const Lattice& probe, const std::vector<Block>& blocks) {
  const auto& shape = probe.shape();
  std::vector<std::size_t> stride(shape.size(), 1);
  for (std::size_t d = shape.size(); d-- > 1;) stride[d - 1] = stride[d] * shape[d];
  std::vector<double> worst(probe.size(), 0.0);
  parallel_for(probe.size(), [&](std::size_t i) {
    const auto idx = probe.multi_index(i);
    double w = 0.0;
    for (std::size_t d = 0; d < shape.size(); ++d) {
      if (idx[d] + 1 < shape[d]) w = std::max(w, angle_distance(blocks[i], blocks[i + stride[d]]));
    }
    worst[i] = w;
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::size_t CoverTrace::count_for(double epsilon) const {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] <= epsilon) return k + 1;
  }
  throw PreconditionError(
      fmt::format("cover: epsilon {} below the resolution the cover was built for", epsilon));
}

CoverTrace greedy_cover(const SubspaceFamily& family, const Lattice& probe,
                        const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw PreconditionError("cover: no epsilon given");
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 1.0)) throw PreconditionError(fmt::format("cover: epsilon {} not in (0, 1]", e));
  }
  if (probe.size() == 0) throw PreconditionError("cover: empty probe lattice");
  if (probe.dim() != family.param_dim()) {
    throw PreconditionError("cover: probe lattice dimension does not match the family");
  }
  const double eps_min = *std::min_element(epsilons.begin(), epsilons.end());

  const std::vector<Block> blocks = probe_blocks(family, probe);
  CoverTrace trace;
  if (probe.is_regular() && !family.discrete()) {
    trace.max_adjacent_distance = max_adjacent(probe, blocks);
    if (trace.max_adjacent_distance > eps_min / 4) {
      throw PreconditionError(fmt::format(
          "cover: probe lattice too coarse (neighbour distance {:.4g} > epsilon/4 = {:.4g})",
          trace.max_adjacent_distance, eps_min / 4));
    }
  }

  const std::size_t n = probe.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (true) {
    trace.centers.push_back(next);
    const Block& c = blocks[next];
    parallel_for(n, [&](std::size_t i) { dist[i] = std::min(dist[i], angle_distance(blocks[i], c)); });
    dist[next] = 0.0;
    const auto far = std::max_element(dist.begin(), dist.end());  // first maximum
    trace.radii.push_back(*far);
    if (*far <= eps_min) break;
    next = static_cast<std::size_t>(far - dist.begin());
  }
  return trace;
}

std::size_t covering_count(const SubspaceFamily& family, double epsilon, const Lattice& probe) {
  return greedy_cover(family, probe, {epsilon}).count_for(epsilon);
}

std::vector<std::size_t> covering_counts(const SubspaceFamily& family,
                                         const std::vector<double>& epsilons,
                                         const Lattice& probe) {
  const CoverTrace trace = greedy_cover(family, probe, epsilons);
  std::vector<std::size_t> out;
  out.reserve(epsilons.size());
  for (double e : epsilons) out.push_back(trace.count_for(e));
  return out;
}

RegularityFit fit_regularity(const std::vector<double>& epsilons,
                             const std::vector<std::size_t>& counts) {
  if (epsilons.size() != counts.size()) {
    throw PreconditionError("fit_regularity: epsilon and count lists differ in length");
  }
  if (epsilons.size() < 3) throw PreconditionError("fit_regularity: need at least 3 pairs");
  const std::size_t n = epsilons.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(epsilons[i] > 0.0)) throw PreconditionError("fit_regularity: epsilon must be positive");
    if (counts[i] < 1) throw PreconditionError("fit_regularity: counts must be >= 1");
    x[i] = -std::log(epsilons[i]);
    y[i] = std::log(static_cast<double>(counts[i]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  RegularityFit fit;
  fit.alpha = sxx > 0 ? std::max(0.0, sxy / sxx) : 0.0;
  double log_n0 = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) log_n0 = std::max(log_n0, y[i] - fit.alpha * x[i]);
  fit.n0 = std::exp(log_n0);
  // exp/log round trip can land an ulp short of the data.
  for (std::size_t i = 0; i < n; ++i) {
    while (fit.n0 * std::pow(epsilons[i], -fit.alpha) < static_cast<double>(counts[i])) {
      fit.n0 = std::nextafter(fit.n0, std::numeric_limits<double>::infinity());
    }
  }
  return fit;
}

double delta_constant(double n0, double alpha) {
  if (!(n0 > 0.0)) throw PreconditionError("delta_constant: N0 must be positive");
  if (!(alpha >= 0.0)) throw PreconditionError("delta_constant: alpha must be >= 0");
  return alpha * std::log(8.0) + 2.0 * std::log(n0) + 2.0;
}

RegularityReport make_regularity_report(std::vector<double> epsilons,
                                        std::vector<std::size_t> counts) {
  const RegularityFit fit = fit_regularity(epsilons, counts);
  RegularityReport r;
  r.epsilons = std::move(epsilons);
  r.counts = std::move(counts);
  r.fitted_n0 = fit.n0;
  r.fitted_alpha = fit.alpha;
  r.delta = delta_constant(fit.n0, fit.alpha);
  return r;
}

double AnalyticRegularity::bound(double epsilon) const { return n0 * std::pow(epsilon, -alpha); }

AnalyticRegularity analytic_regularity(const RegularityInputs& in) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw PreconditionError(fmt::format("analytic_regularity: {}", what));
  };
  need(in.span > 0.0, "shift span T must be positive");
  AnalyticRegularity a;
  switch (in.kind) {
    case RegularityKind::gaussian_pulse:
      need(in.sigma > 0.0, "sigma must be positive");
      a.n0 = std::numbers::sqrt2 * in.span / in.sigma;
      a.alpha = 1.0;
      a.scale_term = 2.0 * std::log(in.span / in.sigma);
      a.printed_additive = 4.78;
      a.note =
          "printed Gaussian constant is log(T/sigma) + 4.78; N0 = sqrt(2) T/sigma, alpha = 1 "
          "give 2 log(T/sigma) + 4.7726";
      break;
    case RegularityKind::sobolev_pulse:
      need(in.sobolev > 0.0, "Sobolev norm L must be positive");
      a.n0 = in.sobolev * in.span;
      a.alpha = 1.0;
      a.scale_term = 2.0 * std::log(in.sobolev * in.span);
      break;
    case RegularityKind::square_pulse:
      need(in.sigma > 0.0, "sigma must be positive");
      a.n0 = 4.0 * in.span / in.sigma;
      a.alpha = 2.0;
      a.scale_term = 2.0 * std::log(in.span / in.sigma);
      break;
    case RegularityKind::gabor: {
      need(in.sigma > 0.0, "sigma must be positive");
      need(in.omega_hi > in.omega_lo, "omega range must be nonempty");
      need(in.omega_lo * in.sigma > 1.0, "requires omega_lo * sigma > 1");
      const double omega = in.omega_hi - in.omega_lo;
      const double root = std::sqrt(in.sigma * in.sigma * in.omega_hi * in.omega_hi + 1.0);
      a.n0 = 9.0 * root * in.span * omega;
      a.alpha = 2.0;
      a.scale_term = 2.0 * std::log(root * in.span * omega);
      a.printed_additive = 8.36;
      a.note =
          "printed Gabor constant is 8.36; N0 = 9 sqrt(sigma^2 Omega_u^2 + 1) T Omega, "
          "alpha = 2 give 10.553";
      break;
    }
    case RegularityKind::lot:
      need(in.sigma > 0.0, "sigma must be positive");
      need(in.subspace_dim >= 2, "LOT family needs K >= 2");
      a.n0 = 12.5 * 12.5 * std::pow(in.subspace_dim, 3) * in.span / in.sigma;
      a.alpha = 2.0;
      a.scale_term = 6.0 * std::log(in.subspace_dim) + 2.0 * std::log(in.span / in.sigma);
      break;
  }
  a.delta = delta_constant(a.n0, a.alpha);
  a.additive = a.delta - a.scale_term;
  return a;
}

AnalyticRegularity analytic_regularity(const FamilyParams& family) {
  RegularityInputs in;
  if (family.shift_range.size() != 2) {
    throw PreconditionError("analytic_regularity: family has no shift range");
  }
  in.span = family.shift_range[1] - family.shift_range[0];
  in.sigma = family.sigma;
  switch (family.kind) {
    case FamilyKind::gaussian_pulse:
      in.kind = RegularityKind::gaussian_pulse;
      break;
    case FamilyKind::square_pulse:
      in.kind = RegularityKind::square_pulse;
      break;
    case FamilyKind::gabor:
      in.kind = RegularityKind::gabor;
      if (family.omega_range.size() != 2) {
        throw PreconditionError("analytic_regularity: gabor family has no omega range");
      }
      in.omega_lo = family.omega_range[0];
      in.omega_hi = family.omega_range[1];
      break;
    case FamilyKind::lot:
      in.kind = RegularityKind::lot;
      in.subspace_dim = family.subspace_dim;
      break;
    default:
      throw PreconditionError(fmt::format("analytic_regularity: unsupported family kind '{}'",
                                          to_string(family.kind)));
  }
  return analytic_regularity(in);
}

std::vector<HolderFit> holder_fit(const SubspaceFamily& family, std::size_t pair_count,
                                  double max_separation, std::uint64_t seed) {
  if (family.discrete()) throw PreconditionError("holder_fit: needs a continuous family");
  if (pair_count < 2) throw PreconditionError("holder_fit: need at least 2 pairs");
  if (!(max_separation > 0.0)) {
    throw PreconditionError("holder_fit: insufficient pairs (max_separation must be positive)");
  }
  const ParamBox& box = family.domain();
  std::vector<HolderFit> fits;
  for (std::size_t d = 0; d < family.param_dim(); ++d) {
    const double width = box.upper[d] - box.lower[d];
    const double cap = std::min(max_separation, width);
    if (!(cap > 0.0)) {
      throw PreconditionError(fmt::format("holder_fit: coordinate {} has zero extent", d));
    }
    CounterRng rng(derive_seed({seed, d}));
    std::vector<Param> first(pair_count), second(pair_count);
    std::vector<double> sep(pair_count);
    for (std::size_t i = 0; i < pair_count; ++i) {
      Param a(family.param_dim());
      for (std::size_t j = 0; j < a.size(); ++j) a[j] = rng.uniform(box.lower[j], box.upper[j]);
      const double s = cap * (1.0 - rng.uniform());  // (0, cap]
      a[d] = rng.uniform(box.lower[d], box.upper[d] - s);
      Param b = a;
      b[d] = std::min(a[d] + s, box.upper[d]);
      sep[i] = b[d] - a[d];
      first[i] = std::move(a);
      second[i] = std::move(b);
    }
    std::vector<double> dist(pair_count, 0.0);
    parallel_for(pair_count, [&](std::size_t i) {
      if (sep[i] > 0.0) dist[i] = projector_distance(family.basis(first[i]), family.basis(second[i]));
    });
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < pair_count; ++i) {
      if (sep[i] > 0.0) used.push_back(i);
    }
    if (used.size() < 2) throw PreconditionError("holder_fit: insufficient distinct pairs");

    HolderFit best;
    bool have = false;
    for (double rho : {1.0, 0.5}) {
      double beta = 0.0;
      for (std::size_t i : used) beta = std::max(beta, dist[i] / std::pow(sep[i], rho));
      if (!(beta > 0.0)) throw PreconditionError("holder_fit: all sampled distances are zero");
      std::vector<double> tight;
      double slack = std::numeric_limits<double>::infinity();
      for (std::size_t i : used) {
        const double b = beta * std::pow(sep[i], rho);
        tight.push_back(dist[i] / b);
        slack = std::min(slack, b - dist[i]);
      }
      HolderFit f{d, beta, rho, used.size(), std::max(0.0, slack), median(tight)};
      if (!have || f.median_tightness > best.median_tightness) {
        best = f;
        have = true;
      }
    }
    fits.push_back(best);
  }
  return fits;
}

}  // namespace contmatch
