#include <gtest/gtest.h>

#include "flaglyap/errors.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"
#include "test_util.hpp"

using namespace flaglyap;
using namespace flaglyap::testing;

namespace {

std::vector<SemigroupSpec> all_specs() {
  return {SemigroupSpec::cone_positive(2),       SemigroupSpec::cone_positive(5),
          SemigroupSpec::totally_positive(3),    SemigroupSpec::totally_positive(5),
          SemigroupSpec::minor_positive(4, {1, 3}), SemigroupSpec::minor_positive(5, {2}),
          SemigroupSpec::symplectic_q(1),        SemigroupSpec::symplectic_q(2)};
}

}  // namespace

TEST(SemigroupSpec, Validation) {
  EXPECT_THROW(SemigroupSpec::minor_positive(4, {}), ValidationError);
  EXPECT_THROW(SemigroupSpec::minor_positive(4, {2, 1}), ValidationError);
  EXPECT_THROW(SemigroupSpec::minor_positive(4, {4}), ValidationError);
  EXPECT_THROW(SemigroupSpec::cone_positive(1), ValidationError);
  EXPECT_THROW(SemigroupSpec::symplectic_q(7), ValidationError);
  EXPECT_EQ(family_from_string("totally_positive"), Family::TotallyPositive);
  EXPECT_THROW(family_from_string("nope"), ValidationError);
  EXPECT_MATRIX_NEAR(SemigroupSpec::symplectic_q(1).form(), mat(2, {0, 1, 1, 0}), 0.0);
}

TEST(InteriorMembership, Examples) {
  EXPECT_TRUE(interior_membership(SemigroupSpec::cone_positive(2), mat(2, {2, 1, 1, 1})));
  EXPECT_FALSE(interior_membership(SemigroupSpec::cone_positive(2), mat(2, {2, 0, 1, 0.5})));
  EXPECT_FALSE(interior_membership(SemigroupSpec::totally_positive(3), Matrix::Identity(3, 3)));
  EXPECT_TRUE(interior_membership(SemigroupSpec::symplectic_q(1), mat(2, {2, 1, 1, 1})));
  EXPECT_FALSE(interior_membership(SemigroupSpec::symplectic_q(1), Matrix::Identity(2, 2)));
  // [[2,1],[1,1]] has all minors positive except it is only 2x2: TP as well.
  EXPECT_TRUE(interior_membership(SemigroupSpec::totally_positive(2), mat(2, {2, 1, 1, 1})));
}

TEST(InteriorMembership, NotSymplectic) {
  EXPECT_THROW(interior_membership(SemigroupSpec::symplectic_q(2), diag({2, 1, 1, 0.5})), NotSymplectic);
}

TEST(PredictedTheta, Examples) {
  EXPECT_EQ(predicted_theta(SemigroupSpec::cone_positive(3)), ThetaSet(3, {2}));
  EXPECT_EQ(predicted_theta(SemigroupSpec::totally_positive(4)), ThetaSet::empty(4));
  EXPECT_EQ(predicted_theta(SemigroupSpec::minor_positive(4, {1, 3})), ThetaSet(4, {2}));
  EXPECT_EQ(predicted_theta(SemigroupSpec::symplectic_q(2)), ThetaSet(4, {1, 3}));
}

TEST(SampleInterior, MembershipDeterminismAndProducts) {
  for (const auto& spec : all_specs()) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Matrix g = sample_interior(spec, seed);
      EXPECT_TRUE(interior_membership(spec, g)) << to_string(spec.family()) << " seed " << seed;
      EXPECT_NEAR(g.determinant(), 1.0, 1e-9);
      EXPECT_TRUE(g == sample_interior(spec, seed));
      EXPECT_TRUE(interior_membership(spec, g * sample_interior(spec, seed + 100)));
    }
  }
}

TEST(SampleInterior, TotallyPositiveHasAllNineteenMinorsPositive) {
  const Matrix g = sample_interior(SemigroupSpec::totally_positive(3), 4);
  int count = 0;
  for (int j = 1; j <= 3; ++j) {
    for (const auto& r : index_subsets(3, j)) {
      for (const auto& c : index_subsets(3, j)) {
        EXPECT_GT(minor(g, r, c), 0.0);
        ++count;
      }
    }
  }
  EXPECT_EQ(count, 19);
}

TEST(SampleInterior, SymplecticChecks) {
  const SemigroupSpec spec = SemigroupSpec::symplectic_q(2);
  const Matrix g = sample_interior(spec, 5);
  const Matrix j = symplectic_form(2);
  EXPECT_MATRIX_NEAR(g.transpose() * j * g, j, 1e-8);
  const Matrix m = spec.form();
  EXPECT_TRUE(is_positive_definite(0.5 * (g.transpose() * m * g - m + (g.transpose() * m * g - m).transpose())));
}

TEST(GapPredictions, ConePositiveOnFourCycle) {
  const SemigroupSpec spec = SemigroupSpec::cone_positive(3);
  const Cocycle c = sample_cocycle(spec, BaseSystem::uniform({1, 2, 3, 0}), 1);
  const GapReport r = verify_gap_predictions(c, spec);
  EXPECT_TRUE(r.containment);
  EXPECT_EQ(r.roots, (std::vector<int>{1}));
  for (const auto& row : r.gaps) EXPECT_GT(row[0], 0.0);
  EXPECT_TRUE(r.passed);
}

TEST(GapPredictions, TotallyPositiveSimpleSpectrum) {
  const SemigroupSpec spec = SemigroupSpec::totally_positive(3);
  Rng rng(2);
  const Cocycle c = sample_cocycle(spec, random_base(6, 3, rng), 2);
  const GapReport r = verify_gap_predictions(c, spec);
  EXPECT_EQ(r.estimated, ThetaSet::empty(3));
  EXPECT_GT(r.min_gap, 1e-8);
}

TEST(GapPredictions, SymplecticPairing) {
  const SemigroupSpec spec = SemigroupSpec::symplectic_q(2);
  Rng rng(3);
  const Cocycle c = sample_cocycle(spec, random_base(5, 3, rng), 3);
  const GapReport r = verify_gap_predictions(c, spec);
  EXPECT_LE(r.pairing_error, 1e-8);
  EXPECT_GT(r.min_two_chi_n, 1e-8);
  for (int x = 0; x < c.base().size(); ++x) {
    const CartanVector h = polar_exponent_exact(c, x);
    EXPECT_NEAR(h[0], -h[3], 1e-8);
    EXPECT_NEAR(h[1], -h[2], 1e-8);
  }
}

TEST(GapPredictions, ContainmentAcrossFamilies) {
  for (const auto& spec : all_specs()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const Cocycle c = sample_cocycle(spec, random_base(1 + static_cast<int>(seed % 16), 4, rng), seed);
      GapCheckOptions opts;
      opts.directions = 0;
      const GapReport r = gap_prediction_report(c, spec, opts);
      EXPECT_TRUE(r.containment) << to_string(spec.family()) << " seed " << seed;
      EXPECT_GT(r.min_gap, 1e-8);
      EXPECT_TRUE(r.passed);
    }
  }
}

TEST(GapPredictions, RejectsNonInteriorGenerators) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), diag({2, 0.5}));
  EXPECT_THROW(gap_prediction_report(c, SemigroupSpec::cone_positive(2)), ValidationError);
}

TEST(GapPredictions, DifferentiabilityResidualsAreReported) {
  const SemigroupSpec spec = SemigroupSpec::cone_positive(3);
  const Cocycle c = sample_cocycle(spec, BaseSystem::uniform({1, 2, 0}), 4);
  GapCheckOptions opts;
  opts.directions = 2;
  const GapReport r = gap_prediction_report(c, spec, opts);
  ASSERT_EQ(r.differentiability.size(), 2u);
  for (const auto& d : r.differentiability) {
    EXPECT_EQ(d.weight_index, 1);
    EXPECT_LE(d.oblique_residual, 1e-5);
  }
}
