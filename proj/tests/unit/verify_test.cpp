#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "contmatch/errors.hpp"
#include "contmatch/families.hpp"
#include "contmatch/matching.hpp"
#include "contmatch/rng.hpp"
#include "contmatch/sketch.hpp"
#include "contmatch/verify.hpp"
#include "oracles.hpp"

using namespace contmatch;

namespace {

SubspaceFamily small_pulses() { return gaussian_pulse_family(0.1, -0.3, 0.3, SampleGrid::over(-1.5, 1.5, 64)); }

SubspaceFamily pulses() { return gaussian_pulse_family(0.05, -0.5, 0.5, SampleGrid::over(-1.0, 1.0, 256)); }

Vector test_signal(const SubspaceFamily& f) {
  return (f.basis({0.1}).matrix().col(0) + 0.3 * f.basis({-0.2}).matrix().col(0)).normalized();
}

GaussianSketch isometry(Eigen::Index n) {
  return GaussianSketch::from_matrix(oracle::random_orthonormal(99, n, n));
}

}  // namespace

TEST(Describe, Lattices) {
  EXPECT_EQ(describe(Lattice::regular(ParamBox({0.0, 1.0}, {1.0, 2.0}), {64, 32})),
            "64x32 over [0,1]x[1,2]");
  EXPECT_EQ(describe(Lattice::from_points({{0.0}, {1.0}, {3.0}})), "3 points");
}

TEST(Conditions, IsometryHasZeroConstants) {
  const auto f = pulses();
  const auto phi = isometry(256);
  const Lattice l = Lattice::regular(f.domain(), {17});
  const Vector h = test_signal(f);
  EXPECT_LE(estimate_c1(f, phi, l).sup_value, 1e-12);
  EXPECT_LE(estimate_c2(f, phi, h, l).sup_value, 1e-12);
  const auto r = verify_gap_bound(f, phi, h, l);
  EXPECT_LE(r.measured_sup, 1e-12);
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_LE(*r.bound, 1e-11);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.seed.has_value());
}

TEST(Conditions, MatchDenseOracles) {
  const auto f = small_pulses();
  const Vector h = oracle::random_matrix(3, 64, 1).col(0).normalized();
  const Lattice l = Lattice::regular(f.domain(), {9});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto phi = make_sketch(12, 64, seed);
    const auto c1 = estimate_c1(f, phi, l);
    const auto c2 = estimate_c2(f, phi, h, l);
    EXPECT_EQ(c1.seed, std::optional<std::uint64_t>(seed));
    ASSERT_EQ(c1.values.size(), l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      const Matrix v = f.basis(l[i]).matrix();
      EXPECT_NEAR(c1.values[i], oracle::c1(v, phi.matrix()), 1e-8);
      EXPECT_NEAR(c2.values[i], oracle::c2(v, phi.matrix(), h), 1e-8);
    }
    EXPECT_EQ(c1.sup_value, *std::max_element(c1.values.begin(), c1.values.end()));
    EXPECT_EQ(c1.argmax_theta, l[c1.argmax_index]);
  }
}

TEST(Conditions, Preconditions) {
  const auto f = gabor_family(0.02, -0.25, 0.25, 2 * M_PI * 50, 2 * M_PI * 250,
                              SampleGrid::over(-0.45, 0.45, 512));
  const Lattice l = Lattice::regular(f.domain(), {3, 3});
  EXPECT_THROW(estimate_c1(f, make_sketch(1, 512, 1), l), PreconditionError);
  EXPECT_THROW(estimate_c1(f, make_sketch(4, 511, 1), l), PreconditionError);
}

TEST(GapBoundFormula, Examples) {
  EXPECT_EQ(theorem1_bound(0.0, 0.0), 0.0);
  EXPECT_NEAR(theorem1_bound(0.1, 0.1), 0.6, 1e-15);
  EXPECT_NEAR(theorem1_bound(0.5, 0.0), (1.5 + 0.25) / 0.5, 1e-15);
  EXPECT_THROW(theorem1_bound(1.0, 0.1), PreconditionError);
  EXPECT_THROW(theorem1_bound(-0.1, 0.1), PreconditionError);
  EXPECT_THROW(theorem1_bound(0.1, -0.1), PreconditionError);
}

TEST(GapBoundFormula, MonotoneInBothArguments) {
  for (double d1 = 0.0; d1 < 0.95; d1 += 0.05) {
    for (double d2 = 0.0; d2 < 1.0; d2 += 0.05) {
      EXPECT_LE(theorem1_bound(d1, d2), theorem1_bound(d1 + 0.05, d2));
      EXPECT_LE(theorem1_bound(d1, d2), theorem1_bound(d1, d2 + 0.05));
    }
  }
}

TEST(GapBound, HoldsWheneverNonVacuous) {
  const auto f = pulses();
  const Vector h = test_signal(f);
  const Lattice l = Lattice::regular(f.domain(), {64});
  std::vector<GaussianSketch> sketches;
  for (std::size_t i = 0; i < 20; ++i) sketches.push_back(make_sketch(20, 256, trial_seed(7, 20, i)));
  const auto reports = verify_gap_bounds(f, sketches, h, l);
  ASSERT_EQ(reports.size(), 20u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.vacuous, r.delta1 >= 1.0);
    EXPECT_EQ(r.vacuous, !r.bound.has_value());
    if (!r.vacuous) EXPECT_TRUE(r.holds) << r.measured_sup << " > " << *r.bound;
  }
  const auto single = verify_gap_bound(f, sketches[3], h, l);
  EXPECT_EQ(single.delta1, reports[3].delta1);
  EXPECT_EQ(single.measured_sup, reports[3].measured_sup);
}

TEST(Sweep, MatchesMatchingModule) {
  const auto f = pulses();
  const Vector h = test_signal(f);
  const Lattice l = Lattice::regular(f.domain(), {21});
  const auto phi = make_sketch(15, 256, 4);
  const auto s = sweep_lattice(f, {phi}, h, l, false);
  const Vector y = apply(phi, h);
  EXPECT_NEAR(s.sketches[0].y_norm_sq, y.squaredNorm(), 1e-14);
  EXPECT_TRUE(s.sketches[0].c1.empty());
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_NEAR(s.direct_energy[i], project_energy(f.basis(l[i]), h), 1e-14);
    EXPECT_NEAR(s.sketches[0].range_energy[i], compressed_energy(phi, f.basis(l[i]), y), 1e-12);
  }
}

TEST(Seeds, TrialSeedDerivation) {
  EXPECT_EQ(trial_seed(1, 40, 3), derive_seed({1, 40, 3}));
  EXPECT_NE(trial_seed(1, 40, 3), trial_seed(1, 40, 4));
  EXPECT_NE(trial_seed(1, 40, 3), trial_seed(1, 41, 3));
}

TEST(Quantile, OrderingAndInterpolation) {
  const std::vector<double> v{5, 1, 4, 2, 3};
  EXPECT_EQ(quantile(v, 0.0), 1.0);
  EXPECT_EQ(quantile(v, 1.0), 5.0);
  EXPECT_EQ(quantile(v, 0.5), 3.0);
  EXPECT_NEAR(quantile(v, 0.1), 1.4, 1e-15);
  EXPECT_LE(quantile(v, 0.1), quantile(v, 0.9));
  EXPECT_THROW(quantile({}, 0.5), PreconditionError);
}

TEST(Scaling, RowsAreConsistent) {
  const auto f = pulses();
  const Vector h = test_signal(f);
  const Lattice l = Lattice::regular(f.domain(), {32});
  const auto rows = scaling_experiment(f, h, {10, 30, 10}, 6, 5, l);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.outcomes.size(), 6u);
    EXPECT_LE(row.q10, row.median_sup_gap);
    EXPECT_LE(row.median_sup_gap, row.q90);
    for (std::size_t t = 0; t < row.outcomes.size(); ++t) {
      const auto& o = row.outcomes[t];
      EXPECT_EQ(o.seed, trial_seed(5, row.m, t));
      EXPECT_GE(o.gap, -1e-10);
      EXPECT_LE(o.gap, 2.0 * o.sup_gap + 1e-9);
    }
  }
  EXPECT_EQ(rows[0].median_gap, rows[2].median_gap);
  EXPECT_EQ(rows[0].median_sup_gap, rows[2].median_sup_gap);
  for (std::size_t t = 0; t < 6; ++t) EXPECT_EQ(rows[0].outcomes[t].compressed_index, rows[2].outcomes[t].compressed_index);
  const auto direct = match_direct(f, h, SearchPlan::uniform(1, 32, 0));
  EXPECT_EQ(rows[0].direct_index, direct.lattice_index);
}

TEST(Scaling, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {3, 1.5, 0.75, 0.375}), -1.0, 1e-12);
  EXPECT_NEAR(loglog_slope({10, 100}, {2, 20}), 1.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), PreconditionError);
}

TEST(Embedding, SingleVectorBelowC1) {
  const auto f = gabor_family(0.02, -0.25, 0.25, 2 * M_PI * 50, 2 * M_PI * 250,
                              SampleGrid::over(-0.45, 0.45, 512));
  const Lattice l = Lattice::regular(f.domain(), {6, 6});
  const auto phi = make_sketch(30, 512, 8);
  const double c1 = estimate_c1(f, phi, l).sup_value;
  EXPECT_LE(single_vector_embedding(f, phi, l, 20, 3), c1 + 1e-9);
}

TEST(Embedding, IsometryIsExact) {
  const auto f = pulses();
  EXPECT_LE(pairwise_embedding(f, isometry(256), 100, 1), 1e-12);
  EXPECT_LE(single_vector_embedding(f, isometry(256), Lattice::regular(f.domain(), {9}), 5, 1), 1e-12);
}

TEST(Embedding, PairwiseMatchesDirectComputation) {
  // x2 = -x1 happens when both draws land on the same point with opposite
  // coefficients; then the ratio equals the single-vector one.
  Matrix v = Matrix::Zero(8, 1);
  v(2, 0) = 1.0;
  FamilyParams p;
  p.kind = FamilyKind::tabulated;
  const SubspaceFamily f(p, {{0.0}}, {OrthoBasis(v)});
  const auto phi = make_sketch(5, 8, 3);
  const double expected = std::abs(phi.matrix().col(2).squaredNorm() - 1.0);
  EXPECT_NEAR(pairwise_embedding(f, phi, 50, 2), expected, 1e-12);
}
