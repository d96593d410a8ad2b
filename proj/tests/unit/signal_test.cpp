#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "contmatch/errors.hpp"
#include "contmatch/families.hpp"
#include "contmatch/rng.hpp"
#include "contmatch/signal.hpp"
#include "oracles.hpp"

using namespace contmatch;

namespace {

const SampleGrid kGrid = SampleGrid::over(-1.0, 1.0, 4096);

SampledSignal gaussian_on(const SampleGrid& g, double sigma, double shift_by = 0.0) {
  return sample(atoms::gaussian(sigma), g, shift_by);
}

}  // namespace

TEST(SampleGrid, RejectsBadSpacingAndCount) {
  EXPECT_THROW(SampleGrid(0.0, 0.0, 10), PreconditionError);
  EXPECT_THROW(SampleGrid(0.0, -1.0, 10), PreconditionError);
  EXPECT_THROW(SampleGrid(0.0, 1.0, 1), PreconditionError);
  EXPECT_THROW(SampleGrid::over(1.0, 0.0, 8), PreconditionError);
  const SampleGrid g = SampleGrid::over(-1.0, 1.0, 8);
  EXPECT_DOUBLE_EQ(g.spacing, 0.25);
  EXPECT_DOUBLE_EQ(g.t_end(), 1.0);
}

TEST(SampledSignal, ValidatesLengthAndFiniteness) {
  const SampleGrid g = SampleGrid::over(0.0, 1.0, 4);
  EXPECT_THROW(SampledSignal(g, Vector::Zero(3)), PreconditionError);
  Vector v = Vector::Zero(4);
  v(2) = std::nan("");
  EXPECT_THROW(SampledSignal(g, v), PreconditionError);
}

TEST(Energy, ZeroAndUnitCoordinate) {
  const SampleGrid g = SampleGrid::over(0.0, 1.0, 16);
  EXPECT_EQ(energy(SampledSignal(g, Vector::Zero(16))), 0.0);
  EXPECT_EQ(energy(SampledSignal(g, Vector::Unit(16, 5))), 1.0);
}

TEST(Energy, GaussianPulseHasUnitL2Norm) {
  const double sigma = 0.05;
  const SampledSignal s = gaussian_on(kGrid, sigma);
  EXPECT_NEAR(energy(s.l2_scaled()), 1.0, 1e-6);
  // Independent quadrature of the continuous pulse.
  const double c = std::pow(std::numbers::pi, -0.25) / std::sqrt(sigma);
  const double q = oracle::simpson(
      [&](double t) { return c * c * std::exp(-t * t / (sigma * sigma)); }, -1.0, 1.0, 20000);
  EXPECT_NEAR(q, 1.0, 1e-9);
}

TEST(Energy, TwoHomogeneous) {
  const SampledSignal s = gaussian_on(kGrid, 0.05, 0.1);
  for (double c : {-3.0, 0.5, 7.25}) {
    EXPECT_NEAR(energy(s.scaled(c)), c * c * energy(s), 1e-12 * c * c * energy(s));
  }
}

TEST(SobolevNorm, GaussianPulseMatchesClosedForm) {
  const double sigma = 0.05;
  const double expected = 1.0 / (sigma * std::numbers::sqrt2);
  EXPECT_NEAR(sobolev_norm(gaussian_on(kGrid, sigma)), expected, 0.01 * expected);
}

TEST(SobolevNorm, ZeroAndHomogeneity) {
  EXPECT_EQ(sobolev_norm(SampledSignal(kGrid, Vector::Zero(kGrid.count))), 0.0);
  const SampledSignal s = gaussian_on(kGrid, 0.05, -0.2);
  EXPECT_NEAR(sobolev_norm(s.scaled(2.0)), 2.0 * sobolev_norm(s), 1e-12 * sobolev_norm(s));
}

TEST(SobolevNorm, AgreesWithFiniteDifferences) {
  for (double sigma : {0.03, 0.05, 0.1}) {
    const SampledSignal s = gaussian_on(kGrid, sigma, 0.1);
    const Vector& v = s.values();
    const double d = s.grid().spacing;
    double acc = 0.0;
    for (Eigen::Index n = 0; n + 1 < v.size(); ++n) acc += std::pow((v(n + 1) - v(n)) / d, 2) * d;
    const double fd = std::sqrt(acc);
    EXPECT_NEAR(sobolev_norm(s), fd, 0.02 * fd) << "sigma " << sigma;
  }
}

TEST(SobolevNorm, RejectsUnsettledEdges) {
  const SampleGrid g = SampleGrid::over(0.0, 1.0, 256);
  EXPECT_THROW(sobolev_norm(SampledSignal(g, Vector::Ones(256))), LeakageError);
}

TEST(TotalVariation, SquarePulse) {
  const double sigma = 0.1;
  const SampledSignal s = sample(atoms::square(sigma), kGrid, 0.0123);
  EXPECT_NEAR(total_variation(s), 2.0 / std::sqrt(sigma), 1e-9);
}

TEST(TotalVariation, MonotoneRamp) {
  const SampleGrid g = SampleGrid::over(0.0, 1.0, 101);
  Vector v(101);
  for (int i = 0; i < 101; ++i) v(i) = i / 100.0;
  EXPECT_NEAR(total_variation(SampledSignal(g, v)), 1.0, 1e-12);
}

TEST(TotalVariation, LotAtomWithinBound) {
  const SampleGrid g = SampleGrid::over(-1.0, 2.0, 30000);
  const double tv = total_variation(sample(atoms::lot(1.0, 3), g));
  EXPECT_LE(tv, std::sqrt(2.0) * (3 * 3 + 4));
  EXPECT_GT(tv, 1.0);
}

TEST(TotalVariation, InvariantUnderSampleShift) {
  const SampledSignal s = gaussian_on(kGrid, 0.05, 0.0);
  const double d = kGrid.spacing;
  for (int m : {-37, 1, 250}) {
    const SampledSignal moved = gaussian_on(kGrid, 0.05, m * d);
    EXPECT_NEAR(total_variation(moved), total_variation(s), 1e-9);
    EXPECT_NEAR(total_variation(shift(s, m * d)), total_variation(s), 1e-9);
  }
}

TEST(Shift, ZeroIsIdentity) {
  const SampledSignal s = gaussian_on(kGrid, 0.05, 0.2);
  const SampledSignal t = shift(s, 0.0);
  EXPECT_LE((t.values() - s.values()).norm(), 1e-12 * s.values().norm());
}

TEST(Shift, GaussianAutocorrelation) {
  const double sigma = 0.05;
  const SampledSignal base = gaussian_on(kGrid, sigma);
  CounterRng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-0.4, 0.4);
    const double b = rng.uniform(-0.4, 0.4);
    const Vector diff = shift(base, a).l2_scaled() - shift(base, b).l2_scaled();
    const double expected = 2.0 * (1.0 - std::exp(-(a - b) * (a - b) / (4 * sigma * sigma)));
    EXPECT_NEAR(diff.squaredNorm(), expected, 1e-6);
  }
}

TEST(Shift, MatchesAnalyticResampling) {
  const SampledSignal base = gaussian_on(kGrid, 0.05);
  const SampledSignal moved = shift(base, 0.123456);
  const SampledSignal direct = gaussian_on(kGrid, 0.05, 0.123456);
  EXPECT_LE((moved.values() - direct.values()).norm(), 1e-9 * direct.values().norm());
}

TEST(Shift, LeakageIsRejected) {
  const SampledSignal base = gaussian_on(kGrid, 0.05, 0.8);
  EXPECT_THROW(shift(base, 0.3), LeakageError);
  EXPECT_THROW(require_on_grid(atoms::gaussian(0.05), kGrid, 1.0, "test"), LeakageError);
  EXPECT_NO_THROW(require_on_grid(atoms::gaussian(0.05), kGrid, 0.8, "test"));
}

TEST(ShiftBound, Sobolev) {
  const double sigma = 0.05;
  const double l = sobolev_norm(gaussian_on(kGrid, sigma));
  CounterRng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-0.5, 0.5);
    const double b = rng.uniform(-0.5, 0.5);
    const double d = (gaussian_on(kGrid, sigma, a).l2_scaled() - gaussian_on(kGrid, sigma, b).l2_scaled()).norm();
    EXPECT_LE(d, l * std::abs(a - b) * 1.01);
  }
}

TEST(ShiftBound, TotalVariation) {
  const double sigma = 0.1;
  const double d = kGrid.spacing;
  const double tv = 2.0 / std::sqrt(sigma);
  CounterRng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto m1 = static_cast<int>(rng.uniform(-800, 800));
    const auto m2 = static_cast<int>(rng.uniform(-800, 800));
    if (m1 == m2) continue;
    const double diff = (sample(atoms::square(sigma), kGrid, m1 * d).l2_scaled() -
                         sample(atoms::square(sigma), kGrid, m2 * d).l2_scaled()).norm();
    EXPECT_LE(diff, tv * std::sqrt(std::abs(m1 - m2) * d) * 1.01);
  }
}
