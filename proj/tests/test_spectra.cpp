#include <gtest/gtest.h>

#include <cmath>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/random.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"
#include "test_util.hpp"

using namespace flaglyap;
using namespace flaglyap::testing;

namespace {

const Matrix kDiag3 = diag({3, 1, 1.0 / 3});

double max_diff(const CartanVector& a, const CartanVector& b) { return (a - b).values().cwiseAbs().maxCoeff(); }

CartanVector log3() { return CartanVector(vec({std::log(3.0), 0.0, -std::log(3.0)})); }

Cocycle rotation_cocycle(double angle) {
  return Cocycle::constant(BaseSystem::uniform({0}),
                           mat(2, {std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle)}));
}

}  // namespace

TEST(PolarExponent, FiniteConstantDiagonal) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({1, 0}), kDiag3);
  for (int n : {1, 5, 40}) EXPECT_LE(max_diff(polar_exponent_finite(c, 0, n), log3()), 1e-12);
}

TEST(PolarExponent, FiniteRotationIsBoundedByConditionOverN) {
  const Cocycle c = rotation_cocycle(0.7);
  for (int n : {1, 10, 100}) EXPECT_LE(polar_exponent_finite(c, 0, n).values().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PolarExponent, ExactExamples) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), kDiag3);
  EXPECT_LE(max_diff(polar_exponent_exact(c, 0), log3()), 1e-14);

  Rng rng(1);
  const Matrix g = random_sl(3, rng);
  const Cocycle inv(BaseSystem::uniform({1, 0}), {g, g.inverse()});
  EXPECT_LE(polar_exponent_exact(inv, 0).values().cwiseAbs().maxCoeff(), 1e-10);

  const Matrix g0 = random_sl(3, rng), g1 = random_sl(3, rng);
  const Cocycle two(BaseSystem::uniform({1, 0}), {g0, g1});
  EXPECT_LE(max_diff(polar_exponent_exact(two, 0), eig_log_moduli(g1 * g0) * 0.5), 1e-10);
  // Same cycle, other starting point: conjugate period map.
  EXPECT_LE(max_diff(polar_exponent_exact(two, 1), polar_exponent_exact(two, 0)), 1e-10);
}

TEST(PolarExponent, FiniteConvergesToExactAtRateOneOverN) {
  // The transient is a bounded additive constant: error(n) ~ C / n.
  const SemigroupSpec spec = SemigroupSpec::totally_positive(3);
  Rng rng(2);
  const Cocycle c = sample_cocycle(spec, BaseSystem::uniform({1, 2, 0}), 2);
  const CartanVector exact = polar_exponent_exact(c, 0);
  double prev = 0.0;
  for (int k : {10, 100, 1000}) {
    const double err = max_diff(polar_exponent_finite(c, 0, 3 * k), exact);
    if (prev > 0.0) {
      EXPECT_LT(err, prev / 5.0);
      EXPECT_GT(err, prev / 20.0);
    }
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(PolarExponent, FiniteIsExactForSymmetricConstantGenerators) {
  Rng rng(3);
  const Matrix q = random_special_orthogonal(4, rng);
  const Matrix g = q * diag({2, 1.25, 0.8, 0.5}) * q.transpose();
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), g);
  EXPECT_LE(max_diff(polar_exponent_finite(c, 0, 50), polar_exponent_exact(c, 0)), 1e-12);
}

TEST(SpectrumFunctional, Examples) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), diag({2, 0.5}));
  EXPECT_NEAR(spectrum_functional(c, fundamental_weight(1, 2)), std::log(2.0), 1e-14);

  Rng rng(4);
  std::vector<Matrix> gens;
  for (int x = 0; x < 5; ++x) gens.push_back(random_sl(4, rng));
  const Cocycle r(random_base(5, 3, rng), gens);
  EXPECT_NEAR(spectrum_functional(r, WeightVector(Vector::Ones(4))), 0.0, 1e-15);

  const Cocycle pos = sample_cocycle(SemigroupSpec::cone_positive(3), random_base(6, 3, rng), 4);
  EXPECT_GT(spectrum_functional(pos, fundamental_weight(1, 3)), 0.0);
}

TEST(SpectrumFunctional, PerronRootOracle) {
  const Cocycle pos = sample_cocycle(SemigroupSpec::cone_positive(3), BaseSystem::uniform({1, 2, 0}), 5);
  const Matrix p = cocycle_step(pos, 3, 0);
  Vector v = Vector::Ones(3);
  double lambda = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const Vector w = p * v;
    lambda = w.norm() / v.norm();
    v = w / w.norm();
  }
  EXPECT_NEAR(spectrum_functional(pos, fundamental_weight(1, 3)), std::log(lambda) / 3.0, 1e-10);
}

TEST(SpectrumViaSection, Examples) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({1, 0}), kDiag3);
  const ThetaSet proj = ThetaSet::all_but(3, {1});
  EXPECT_NEAR(spectrum_via_section(c, fundamental_weight(1, 3), proj), std::log(3.0), 1e-12);
  EXPECT_THROW(spectrum_via_section(c, fundamental_weight(2, 3), proj), WeightNotAdmissible);
}

TEST(SpectrumViaSection, AgreesWithFunctional) {
  for (const auto& spec : {SemigroupSpec::cone_positive(4), SemigroupSpec::totally_positive(3),
                           SemigroupSpec::minor_positive(5, {2, 4}), SemigroupSpec::symplectic_q(2)}) {
    Rng rng(6);
    const Cocycle c = sample_cocycle(spec, random_base(9, 4, rng), 6);
    const ThetaSet theta = predicted_theta(spec);
    for (const auto& omega : weights_outside(theta)) {
      EXPECT_NEAR(spectrum_functional(c, omega), spectrum_via_section(c, omega, theta), 1e-8);
    }
  }
}

TEST(LyapunovOfFlag, Examples) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), kDiag3);
  for (int n : {1, 7}) {
    EXPECT_LE(max_diff(lyapunov_of_flag(c, 0, FlagPoint::standard(ThetaSet::empty(3)), n), log3()), 1e-14);
  }
  const Cocycle pos = sample_cocycle(SemigroupSpec::totally_positive(3), BaseSystem::uniform({1, 0}), 7);
  const Section s = attractor_section(pos, ThetaSet::empty(3));
  EXPECT_LE(max_diff(lyapunov_of_flag(pos, 0, s.flags[0], 200), polar_exponent_exact(pos, 0)), 1e-8);
  EXPECT_THROW(lyapunov_of_flag(c, 0, FlagPoint::standard(ThetaSet::empty(3)), 0), ValidationError);
}

TEST(WeylRelation, HyperbolicSl2) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), mat(2, {2, 1, 1, 1}));
  const WeylCheck w = weyl_relation_check(c, 0, 10);
  EXPECT_TRUE(w.passed);
  ASSERT_EQ(w.realized.size(), 2u);
  const double l = polar_exponent_exact(c, 0)[0];
  std::vector<double> firsts{w.realized[0][0], w.realized[1][0]};
  std::sort(firsts.begin(), firsts.end());
  EXPECT_NEAR(firsts[0], -l, 1e-10);
  EXPECT_NEAR(firsts[1], l, 1e-10);
}

TEST(WeylRelation, TotallyPositiveRealizesWholeOrbit) {
  const Cocycle c = sample_cocycle(SemigroupSpec::totally_positive(3), BaseSystem::uniform({1, 2, 0}), 8);
  const WeylCheck w = weyl_relation_check(c, 0, 30);
  EXPECT_TRUE(w.passed) << w.max_error;
  ASSERT_EQ(w.realized.size(), 6u);
  for (std::size_t i = 0; i < w.realized.size(); ++i)
    for (std::size_t j = i + 1; j < w.realized.size(); ++j) EXPECT_GT(max_diff(w.realized[i], w.realized[j]), 1e-3);
}

TEST(WeylRelation, RotationIsDegenerate) {
  EXPECT_THROW(weyl_relation_check(rotation_cocycle(0.4), 0, 10), DegenerateSpectrum);
}

TEST(FlagTypeEstimate, Examples) {
  Rng rng(9);
  const Cocycle tp = sample_cocycle(SemigroupSpec::totally_positive(4), random_base(5, 3, rng), 9);
  EXPECT_EQ(flag_type_estimate(tp), ThetaSet::empty(4));
  const Cocycle pos = sample_cocycle(SemigroupSpec::cone_positive(3), random_base(5, 3, rng), 10);
  EXPECT_FALSE(flag_type_estimate(pos).contains(1));
  EXPECT_EQ(flag_type_estimate(rotation_cocycle(0.4)), ThetaSet::full(2));
  const Cocycle blocks = Cocycle::constant(BaseSystem::uniform({0}), diag({2, 2, 0.25}));
  EXPECT_EQ(flag_type_estimate(blocks), ThetaSet(3, {1}));
}

TEST(SpectrumReport, InvariantsAndInverseDuality) {
  Rng rng(11);
  std::vector<Matrix> gens;
  for (int x = 0; x < 7; ++x) gens.push_back(random_sl(4, rng));
  const Cocycle c(random_base(7, 4, rng), gens);
  const SpectrumReport r = spectrum_report(c);
  EXPECT_EQ(r.method, SpectrumMethod::ExactPeriodic);
  for (const auto& h : r.per_point) EXPECT_TRUE(h.is_sorted_nonincreasing(1e-12));
  EXPECT_NEAR(r.mean.values().sum(), 0.0, 1e-8);
  ASSERT_EQ(r.gaps.size(), 3u);

  const CartanVector inv = mean_spectrum(inverse_cocycle(c));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(inv[i], -r.mean[3 - i], 1e-8);

  const SpectrumReport fin = spectrum_report(c, SpectrumMethod::FiniteN, 20);
  EXPECT_EQ(fin.horizon, 20);
  EXPECT_EQ(to_string(fin.method), "finite-n");
}
