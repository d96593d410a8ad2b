#include "contmatch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "contmatch/errors.hpp"
#include "contmatch/matching.hpp"
#include "contmatch/parallel.hpp"
#include "contmatch/rng.hpp"

namespace contmatch {

namespace {

Vector unit_signal(const Vector& h0, Eigen::Index expected, const char* what) {
  if (h0.size() != expected) {
    throw PreconditionError(fmt::format("{}: signal has length {}, ambient dimension is {}", what,
                                        h0.size(), expected));
  }
  const double norm = h0.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw PreconditionError(fmt::format("{}: signal must have positive finite norm", what));
  }
  return h0 / norm;
}

void check_sketch(const SubspaceFamily& family, const GaussianSketch& phi, const char* what) {
  if (phi.cols() != static_cast<std::size_t>(family.ambient_dim())) {
    throw PreconditionError(fmt::format("{}: sketch has {} columns, ambient dimension is {}", what,
                                        phi.cols(), family.ambient_dim()));
  }
  if (phi.rows() < static_cast<std::size_t>(family.subspace_dim())) {
    throw PreconditionError(
        fmt::format("{}: M = {} is below the subspace dimension K = {}", what, phi.rows(),
                    family.subspace_dim()));
  }
}

double c1_value(const Matrix& a) {
  const Eigen::Index k = a.cols();
  const Matrix g = Matrix::Identity(k, k) - a.transpose() * a;
  if (k == 1) return std::abs(g(0, 0));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double c2_value(const Matrix& a, const Vector& y, const Vector& c) {
  return (a.transpose() * (y - a * c)).norm();
}

ConditionEstimate summarize(const Lattice& lattice, std::vector<double> values,
                            std::optional<std::uint64_t> seed) {
  ConditionEstimate e;
  e.lattice = describe(lattice);
  e.seed = seed;
  e.values = std::move(values);
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (i == 0 || e.values[i] > e.sup_value) {
      e.sup_value = e.values[i];
      e.argmax_index = i;
    }
  }
  if (!e.values.empty()) e.argmax_theta = lattice[e.argmax_index];
  return e;
}

Vector random_unit(CounterRng& rng, Eigen::Index k) {
  Vector a(k);
  do {
    for (Eigen::Index j = 0; j < k; ++j) a(j) = rng.normal();
  } while (!(a.norm() > 0.0));
  return a / a.norm();
}

Param random_theta(const SubspaceFamily& family, CounterRng& rng) {
  if (family.discrete()) {
    const auto n = family.points().size();
    return family.points()[static_cast<std::size_t>(rng.next_u64() % n)];
  }
  const ParamBox& box = family.domain();
  Param t(box.dim());
  for (std::size_t d = 0; d < t.size(); ++d) t[d] = rng.uniform(box.lower[d], box.upper[d]);
  return t;
}

}  // namespace

std::string describe(const Lattice& lattice) {
  if (!lattice.is_regular()) return fmt::format("{} points", lattice.size());
  std::vector<std::string> ranges;
  for (std::size_t d = 0; d < lattice.dim(); ++d) {
    ranges.push_back(fmt::format("[{:.9g},{:.9g}]", lattice.box().lower[d], lattice.box().upper[d]));
  }
  return fmt::format("{} over {}", fmt::join(lattice.shape(), "x"), fmt::join(ranges, "x"));
}

ConditionEstimate estimate_c1(const SubspaceFamily& family, const GaussianSketch& phi,
                              const Lattice& lattice) {
  check_sketch(family, phi, "estimate_c1");
  std::vector<double> values(lattice.size());
  parallel_for(lattice.size(),
               [&](std::size_t i) { values[i] = c1_value(apply(phi, family.basis(lattice[i]))); });
  return summarize(lattice, std::move(values), phi.seed());
}

ConditionEstimate estimate_c2(const SubspaceFamily& family, const GaussianSketch& phi,
                              const Vector& h0, const Lattice& lattice) {
  check_sketch(family, phi, "estimate_c2");
  const Vector h = unit_signal(h0, family.ambient_dim(), "estimate_c2");
  const Vector y = apply(phi, h);
  std::vector<double> values(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t i) {
    const OrthoBasis v = family.basis(lattice[i]);
    values[i] = c2_value(apply(phi, v), y, v.coefficients(h));
  });
  return summarize(lattice, std::move(values), phi.seed());
}

double theorem1_bound(double delta1, double delta2) {
  if (!(delta1 >= 0.0) || !(delta2 >= 0.0)) {
    throw PreconditionError("theorem1_bound: deltas must be non-negative");
  }
  if (!(delta1 < 1.0)) {
    throw PreconditionError(fmt::format("theorem1_bound: delta1 = {} >= 1, no guarantee", delta1));
  }
  const double s = delta1 + delta2;
  return (3.0 * delta1 + 2.0 * delta2 + s * s) / (1.0 - delta1);
}

LatticeSweep sweep_lattice(const SubspaceFamily& family, const std::vector<GaussianSketch>& sketches,
                           const Vector& h0, const Lattice& lattice, bool conditions) {
  const Vector h = unit_signal(h0, family.ambient_dim(), "sweep_lattice");
  Eigen::Index total_rows = 0;
  for (const auto& phi : sketches) {
    check_sketch(family, phi, "sweep_lattice");
    total_rows += static_cast<Eigen::Index>(phi.rows());
  }
  // All sketches stacked, so each basis costs one product.
  Matrix stacked(total_rows, family.ambient_dim());
  std::vector<Eigen::Index> offset;
  Eigen::Index row = 0;
  for (const auto& phi : sketches) {
    offset.push_back(row);
    stacked.middleRows(row, phi.matrix().rows()) = phi.matrix();
    row += phi.matrix().rows();
  }
  const Vector y_all = stacked * h;

  LatticeSweep out;
  out.lattice = lattice;
  out.direct_energy.resize(lattice.size());
  out.sketches.resize(sketches.size());
  for (std::size_t s = 0; s < sketches.size(); ++s) {
    auto& sw = out.sketches[s];
    sw.seed = sketches[s].seed();
    sw.y_norm_sq = y_all.segment(offset[s], sketches[s].matrix().rows()).squaredNorm();
    sw.range_energy.resize(lattice.size());
    if (conditions) {
      sw.c1.resize(lattice.size());
      sw.c2.resize(lattice.size());
    }
  }

  parallel_for(lattice.size(), [&](std::size_t i) {
    const OrthoBasis v = family.basis(lattice[i]);
    const Vector c = v.coefficients(h);
    out.direct_energy[i] = c.squaredNorm();
    const Matrix a_all = stacked.middleCols(v.first_row(), v.support_rows()) * v.support();
    for (std::size_t s = 0; s < sketches.size(); ++s) {
      const Eigen::Index m = sketches[s].matrix().rows();
      const Matrix a = a_all.middleRows(offset[s], m);
      const Vector y = y_all.segment(offset[s], m);
      auto& sw = out.sketches[s];
      sw.range_energy[i] = range_energy(a, y);
      if (conditions) {
        sw.c1[i] = c1_value(a);
        sw.c2[i] = c2_value(a, y, c);
      }
    }
  });
  return out;
}

GapBoundReport gap_bound_from_sweep(const LatticeSweep& sweep, std::size_t sketch) {
  const SketchSweep& sw = sweep.sketches.at(sketch);
  if (sw.c1.empty()) throw PreconditionError("gap bound: sweep was run without conditions");
  GapBoundReport r;
  r.seed = sw.seed;
  std::size_t at = 0;
  for (std::size_t i = 0; i < sweep.lattice.size(); ++i) {
    r.delta1 = std::max(r.delta1, sw.c1[i]);
    r.delta2 = std::max(r.delta2, sw.c2[i]);
    const double gap = std::abs(sw.range_energy[i] - sweep.direct_energy[i]);
    if (gap > r.measured_sup || i == 0) {
      r.measured_sup = gap;
      at = i;
    }
  }
  if (sweep.lattice.size() > 0) r.sup_theta = sweep.lattice[at];
  if (r.delta1 < 1.0) {
    r.bound = theorem1_bound(r.delta1, r.delta2);
    r.holds = r.measured_sup <= *r.bound + kBoundSlack;
  } else {
    r.vacuous = true;
  }
  return r;
}

GapBoundReport verify_gap_bound(const SubspaceFamily& family, const GaussianSketch& phi,
                                const Vector& h0, const Lattice& lattice) {
  return verify_gap_bounds(family, {phi}, h0, lattice).front();
}

std::vector<GapBoundReport> verify_gap_bounds(const SubspaceFamily& family,
                                              const std::vector<GaussianSketch>& sketches,
                                              const Vector& h0, const Lattice& lattice) {
  const LatticeSweep sweep = sweep_lattice(family, sketches, h0, lattice, true);
  std::vector<GapBoundReport> out;
  for (std::size_t s = 0; s < sketches.size(); ++s) out.push_back(gap_bound_from_sweep(sweep, s));
  return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t m, std::size_t trial) {
  return derive_seed({base_seed, m, trial});
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw PreconditionError("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw PreconditionError("quantile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<ScalingRow> scaling_experiment(const SubspaceFamily& family, const Vector& h0,
                                           const std::vector<std::size_t>& m_list,
                                           std::size_t trials, std::uint64_t base_seed,
                                           const Lattice& lattice) {
  if (m_list.empty()) throw PreconditionError("scaling: empty M list");
  if (trials == 0) throw PreconditionError("scaling: need at least one trial");
  for (std::size_t m : m_list) {
    if (m < static_cast<std::size_t>(family.subspace_dim())) {
      throw PreconditionError(fmt::format("scaling: M = {} is below K = {}", m, family.subspace_dim()));
    }
  }
  const auto n = static_cast<std::size_t>(family.ambient_dim());
  std::vector<GaussianSketch> sketches;
  for (std::size_t m : m_list) {
    for (std::size_t t = 0; t < trials; ++t) sketches.emplace_back(m, n, trial_seed(base_seed, m, t));
  }
  const LatticeSweep sweep = sweep_lattice(family, sketches, h0, lattice, false);

  std::vector<double> direct_residual(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) direct_residual[i] = 1.0 - sweep.direct_energy[i];
  const std::size_t bar = lattice_argmin(lattice, direct_residual);

  std::vector<ScalingRow> rows;
  std::size_t s = 0;
  for (std::size_t m : m_list) {
    ScalingRow row;
    row.m = m;
    row.trials = trials;
    row.direct_index = bar;
    row.direct_theta = lattice[bar];
    std::vector<double> gaps, sups;
    for (std::size_t t = 0; t < trials; ++t, ++s) {
      const SketchSweep& sw = sweep.sketches[s];
      std::vector<double> residual(lattice.size());
      double sup = 0.0;
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        residual[i] = std::max(0.0, sw.y_norm_sq - sw.range_energy[i]);
        sup = std::max(sup, std::abs(sw.range_energy[i] - sweep.direct_energy[i]));
      }
      const std::size_t hat = lattice_argmin(lattice, residual);
      TrialOutcome o{*sw.seed, sweep.direct_energy[bar] - sweep.direct_energy[hat], sup, hat};
      gaps.push_back(o.gap);
      sups.push_back(o.sup_gap);
      row.outcomes.push_back(o);
    }
    row.median_gap = quantile(gaps, 0.5);
    row.median_sup_gap = quantile(sups, 0.5);
    row.q10 = quantile(sups, 0.1);
    row.q90 = quantile(sups, 0.9);
    rows.push_back(std::move(row));
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("loglog_slope: need at least two (x, y) pairs");
  }
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw PreconditionError("loglog_slope: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw PreconditionError("loglog_slope: x values are all equal");
  return sxy / sxx;
}

double pairwise_embedding(const SubspaceFamily& family, const GaussianSketch& phi,
                          std::size_t pair_count, std::uint64_t seed) {
  if (pair_count < 1) throw PreconditionError("pairwise_embedding: need at least one pair");
  if (phi.cols() != static_cast<std::size_t>(family.ambient_dim())) {
    throw PreconditionError("pairwise_embedding: sketch width differs from the ambient dimension");
  }
  CounterRng rng(seed);
  const Eigen::Index k = family.subspace_dim();
  std::vector<Param> t1(pair_count), t2(pair_count);
  std::vector<Vector> a1(pair_count), a2(pair_count);
  for (std::size_t p = 0; p < pair_count; ++p) {
    t1[p] = random_theta(family, rng);
    t2[p] = random_theta(family, rng);
    a1[p] = random_unit(rng, k);
    a2[p] = random_unit(rng, k);
  }
  std::vector<double> ratio(pair_count, 0.0);
  std::vector<char> degenerate(pair_count, 0);
  parallel_for(pair_count, [&](std::size_t p) {
    const Vector d = family.basis(t1[p]).matrix() * a1[p] - family.basis(t2[p]).matrix() * a2[p];
    const double dd = d.squaredNorm();
    if (std::sqrt(dd) < 1e-8) {
      degenerate[p] = 1;
      return;
    }
    ratio[p] = std::abs(apply(phi, d).squaredNorm() / dd - 1.0);
  });
  // Resample degenerate pairs sequentially so the stream stays deterministic.
  for (std::size_t p = 0; p < pair_count; ++p) {
    int attempts = 0;
    while (degenerate[p]) {
      if (++attempts > 1000) {
        throw PreconditionError("pairwise_embedding: family diameter is numerically zero");
      }
      const Vector d = family.basis(random_theta(family, rng)).matrix() * random_unit(rng, k) -
                       family.basis(random_theta(family, rng)).matrix() * random_unit(rng, k);
      const double dd = d.squaredNorm();
      if (std::sqrt(dd) >= 1e-8) {
        ratio[p] = std::abs(apply(phi, d).squaredNorm() / dd - 1.0);
        degenerate[p] = 0;
      }
    }
  }
  return *std::max_element(ratio.begin(), ratio.end());
}

double single_vector_embedding(const SubspaceFamily& family, const GaussianSketch& phi,
                               const Lattice& lattice, std::size_t vectors_per_point,
                               std::uint64_t seed) {
  check_sketch(family, phi, "single_vector_embedding");
  if (vectors_per_point < 1) throw PreconditionError("single_vector_embedding: need >= 1 vector");
  std::vector<double> worst(lattice.size(), 0.0);
  parallel_for(lattice.size(), [&](std::size_t i) {
    CounterRng rng(derive_seed({seed, i}));
    const Matrix a = apply(phi, family.basis(lattice[i]));
    double w = 0.0;
    for (std::size_t j = 0; j < vectors_per_point; ++j) {
      const Vector c = random_unit(rng, a.cols());
      w = std::max(w, std::abs((a * c).squaredNorm() - 1.0));
    }
    worst[i] = w;
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

}  // namespace contmatch
