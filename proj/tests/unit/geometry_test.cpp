#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "contmatch/errors.hpp"
#include "contmatch/families.hpp"
#include "contmatch/geometry.hpp"
#include "contmatch/lattice.hpp"
#include "oracles.hpp"

using namespace contmatch;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SubspaceFamily pulses() {
  return gaussian_pulse_family(0.05, 0.0, 1.0, SampleGrid::over(-0.5, 1.5, 2048));
}

Lattice probe(const SubspaceFamily& f, std::size_t n) { return Lattice::regular(f.domain(), {n}); }

SubspaceFamily two_points(double distance) {
  Matrix a = Matrix::Zero(3, 1);
  Matrix b = Matrix::Zero(3, 1);
  a(0, 0) = 1.0;
  b(0, 0) = std::sqrt(1.0 - distance * distance);
  b(1, 0) = distance;
  FamilyParams p;
  p.kind = FamilyKind::tabulated;
  return SubspaceFamily(p, {{0.0}, {1.0}}, {OrthoBasis(a), OrthoBasis(b)});
}

void expect_counts_within_bounds(const SubspaceFamily& f, const Lattice& l) {
  const std::vector<double> eps{0.5, 0.25, 0.125};
  const auto counts = covering_counts(f, eps, l);
  const auto a = analytic_regularity(f.params());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_LE(static_cast<double>(counts[i]), a.bound(eps[i])) << "eps " << eps[i];
    if (i > 0) EXPECT_GE(counts[i], counts[i - 1]);
  }
}

}  // namespace

TEST(Cover, WholeSphereNeedsOneCenter) {
  EXPECT_EQ(covering_count(pulses(), 1.0, probe(pulses(), 512)), 1u);
}

TEST(Cover, GaussianQuarterResolution) {
  const auto f = pulses();
  EXPECT_LE(covering_count(f, 0.25, probe(f, 512)), 114u);
}

TEST(Cover, TwoPointFamily) {
  const auto f = two_points(0.3);
  const auto l = Lattice::from_points(f.points());
  EXPECT_EQ(covering_count(f, 0.4, l), 1u);
  EXPECT_EQ(covering_count(f, 0.2, l), 2u);
}

TEST(Cover, CountsAntitoneAndRadiiDecreasing) {
  const auto f = pulses();
  const std::vector<double> eps{0.9, 0.6, 0.4, 0.3, 0.2, 0.15};
  const auto trace = greedy_cover(f, probe(f, 512), eps);
  EXPECT_EQ(trace.centers.front(), 0u);
  for (std::size_t i = 1; i < trace.radii.size(); ++i) EXPECT_LE(trace.radii[i], trace.radii[i - 1]);
  for (std::size_t i = 1; i < eps.size(); ++i) EXPECT_GE(trace.count_for(eps[i]), trace.count_for(eps[i - 1]));
  EXPECT_LE(trace.radii.back(), 0.15);
}

TEST(Cover, SparseProbeRejected) {
  const auto f = pulses();
  EXPECT_THROW(covering_count(f, 0.125, probe(f, 16)), PreconditionError);
  EXPECT_THROW(covering_count(f, 0.0, probe(f, 512)), PreconditionError);
}

TEST(Cover, GaussianWithinAnalyticBound) {
  const auto f = pulses();
  expect_counts_within_bounds(f, probe(f, 512));
}

TEST(Cover, SquareWithinAnalyticBound) {
  const auto f = square_pulse_family(0.1, 0.0, 0.2, SampleGrid::over(-0.1, 0.3, 4096));
  expect_counts_within_bounds(f, probe(f, 4097));
}

TEST(Cover, GaborWithinAnalyticBound) {
  const auto f = gabor_family(0.02, -0.02, 0.02, kTwoPi * 100, kTwoPi * 110,
                              SampleGrid::over(-0.25, 0.25, 512));
  expect_counts_within_bounds(f, Lattice::regular(f.domain(), {128, 128}));
}

TEST(Cover, LotWithinAnalyticBound) {
  const auto f = lot_family(0.1, 4, 0.0, 0.5, SampleGrid::over(-0.2, 0.8, 4096));
  expect_counts_within_bounds(f, probe(f, 2049));
}

TEST(FitRegularity, ExactPowerLaw) {
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  std::vector<std::size_t> counts;
  for (double e : eps) counts.push_back(static_cast<std::size_t>(std::lround(3.0 / e)));
  const auto fit = fit_regularity(eps, counts);
  EXPECT_NEAR(fit.alpha, 1.0, 1e-9);
  EXPECT_NEAR(fit.n0, 3.0, 1e-9);
}

TEST(FitRegularity, ConstantCounts) {
  const auto fit = fit_regularity({0.5, 0.25, 0.1}, {7, 7, 7});
  EXPECT_NEAR(fit.alpha, 0.0, 1e-12);
  EXPECT_NEAR(fit.n0, 7.0, 1e-9);
}

TEST(FitRegularity, DecreasingCountsClampAlpha) {
  const auto fit = fit_regularity({0.5, 0.25, 0.1}, {9, 5, 2});
  EXPECT_EQ(fit.alpha, 0.0);
  EXPECT_GE(fit.n0, 9.0);
}

TEST(FitRegularity, MajorizesData) {
  const std::vector<double> eps{0.5, 0.3, 0.2, 0.12, 0.07};
  const std::vector<std::size_t> counts{4, 9, 13, 31, 50};
  const auto fit = fit_regularity(eps, counts);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_GE(fit.n0 * std::pow(eps[i], -fit.alpha), static_cast<double>(counts[i]));
  }
}

TEST(FitRegularity, Preconditions) {
  EXPECT_THROW(fit_regularity({0.5, 0.25}, {1, 2}), PreconditionError);
  EXPECT_THROW(fit_regularity({0.5, 0.25, 0.1}, {1, 2}), PreconditionError);
  EXPECT_THROW(fit_regularity({0.5, -0.25, 0.1}, {1, 2, 3}), PreconditionError);
}

TEST(DeltaConstant, Examples) {
  EXPECT_NEAR(delta_constant(1.0, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(delta_constant(1.0, 1.0), std::log(8.0) + 2.0, 1e-15);
  EXPECT_NEAR(delta_constant(std::exp(1.0), 1.0), 6.0794415416798, 1e-12);
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    for (double n0 : {1.0, 10.0, 1e4}) {
      EXPECT_NEAR(delta_constant(n0, a), 2.08 * a + 2.0 * std::log(n0) + 2.0, 0.01 * a + 1e-12);
    }
  }
}

TEST(RegularityReport, FitsAndDelta) {
  const auto r = make_regularity_report({0.5, 0.25, 0.125}, {4, 8, 16});
  EXPECT_NEAR(r.fitted_alpha, 1.0, 1e-9);
  EXPECT_NEAR(r.fitted_n0, 2.0, 1e-9);
  EXPECT_NEAR(r.delta, delta_constant(r.fitted_n0, r.fitted_alpha), 1e-15);
}

TEST(Analytic, SobolevExample) {
  RegularityInputs in;
  in.kind = RegularityKind::sobolev_pulse;
  in.sobolev = std::exp(1.0);
  in.span = 1.0;
  const auto a = analytic_regularity(in);
  EXPECT_NEAR(a.n0, std::exp(1.0), 1e-12);
  EXPECT_EQ(a.alpha, 1.0);
  EXPECT_NEAR(a.delta, 6.0794415416798, 1e-12);
}

TEST(Analytic, GaussianAdditiveForm) {
  RegularityInputs in;
  in.kind = RegularityKind::gaussian_pulse;
  in.sigma = 0.05;
  in.span = 1.0;
  const auto a = analytic_regularity(in);
  EXPECT_NEAR(a.n0, std::numbers::sqrt2 * 20.0, 1e-12);
  EXPECT_EQ(a.alpha, 1.0);
  EXPECT_NEAR(a.additive, 4.7726, 1e-4);
  EXPECT_NEAR(a.scale_term, 2.0 * std::log(20.0), 1e-12);
  EXPECT_NEAR(a.scale_term + a.additive, a.delta, 1e-12);
  EXPECT_TRUE(a.printed_additive.has_value());
  EXPECT_FALSE(a.note.empty());
}

TEST(Analytic, SquareLotAndGabor) {
  RegularityInputs sq;
  sq.kind = RegularityKind::square_pulse;
  sq.sigma = 0.1;
  sq.span = 0.2;
  const auto s = analytic_regularity(sq);
  EXPECT_NEAR(s.n0, 8.0, 1e-12);
  EXPECT_EQ(s.alpha, 2.0);
  EXPECT_NEAR(s.additive, 8.9315, 1e-4);
  EXPECT_NEAR(s.bound(0.5), 32.0, 1e-12);

  RegularityInputs lot;
  lot.kind = RegularityKind::lot;
  lot.sigma = 0.1;
  lot.span = 0.5;
  lot.subspace_dim = 4;
  const auto l = analytic_regularity(lot);
  EXPECT_NEAR(l.n0, 12.5 * 12.5 * 64 * 5.0, 1e-9);
  EXPECT_NEAR(l.additive, 16.262, 1e-3);

  RegularityInputs gb;
  gb.kind = RegularityKind::gabor;
  gb.sigma = 0.02;
  gb.span = 0.5;
  gb.omega_lo = kTwoPi * 50;
  gb.omega_hi = kTwoPi * 250;
  const auto g = analytic_regularity(gb);
  EXPECT_EQ(g.alpha, 2.0);
  EXPECT_NEAR(g.additive, 10.553, 1e-3);
  EXPECT_NEAR(g.delta, delta_constant(g.n0, 2.0), 1e-12);
  EXPECT_NEAR(g.scale_term + g.additive, g.delta, 1e-9);
}

TEST(Analytic, TabulatedUnsupported) {
  FamilyParams p;
  p.kind = FamilyKind::tabulated;
  EXPECT_THROW(analytic_regularity(p), PreconditionError);
}

TEST(Holder, GaussianIsLipschitz) {
  const auto f = pulses();
  const auto fits = holder_fit(f, 200, 0.01, 1);
  ASSERT_EQ(fits.size(), 1u);
  EXPECT_EQ(fits[0].rho, 1.0);
  EXPECT_LE(fits[0].beta, std::numbers::sqrt2 / 0.05 * 1.01);
  EXPECT_EQ(fits[0].pairs, 200u);
  EXPECT_NEAR(fits[0].min_slack, 0.0, 1e-12);
}

TEST(Holder, SquareIsHalfHolder) {
  const double sigma = 0.1;
  const auto f = square_pulse_family(sigma, 0.0, 0.2, SampleGrid::over(-0.1, 0.3, 4096));
  const auto fits = holder_fit(f, 200, 0.02, 2);
  ASSERT_EQ(fits.size(), 1u);
  EXPECT_EQ(fits[0].rho, 0.5);
  EXPECT_LE(fits[0].beta, 2.0 / std::sqrt(sigma) * 1.01);
}

TEST(Holder, GaborPerCoordinate) {
  const auto f = gabor_family(0.02, -0.02, 0.02, kTwoPi * 100, kTwoPi * 110,
                              SampleGrid::over(-0.25, 0.25, 512));
  const auto fits = holder_fit(f, 100, 0.005, 3);
  ASSERT_EQ(fits.size(), 2u);
  EXPECT_EQ(fits[0].dimension, 0u);
  EXPECT_EQ(fits[1].dimension, 1u);
  for (const auto& h : fits) EXPECT_GT(h.beta, 0.0);
}

TEST(Holder, DegenerateSampleRejected) {
  EXPECT_THROW(holder_fit(pulses(), 0, 0.1, 1), PreconditionError);
  EXPECT_THROW(holder_fit(pulses(), 10, 0.0, 1), PreconditionError);
  EXPECT_THROW(holder_fit(two_points(0.3), 10, 0.1, 1), PreconditionError);
}
