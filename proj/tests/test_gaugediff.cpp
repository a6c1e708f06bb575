#include <gtest/gtest.h>

#include <cmath>

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

Cocycle positive_cocycle(std::uint64_t seed) {
  Rng rng(seed);
  return sample_cocycle(SemigroupSpec::cone_positive(3), random_base(6, 3, rng), seed);
}

}  // namespace

TEST(GaugeDirection, Validation) {
  EXPECT_THROW(GaugeDirection({diag({1, 1})}), ValidationError);
  EXPECT_THROW(GaugeDirection(std::vector<Matrix>{}), ValidationError);
  EXPECT_THROW(GaugeDirection::symplectic({diag({1, 2, -2, -1})}), ValidationError);
  EXPECT_NO_THROW(GaugeDirection::symplectic({diag({1, 2, -1, -2})}));
}

TEST(GaugeExp, Examples) {
  Rng rng(1);
  const GaugeDirection y = random_gauge(3, 3, rng);
  for (const auto& m : gauge_exp(y, 0.0)) EXPECT_TRUE((m.array() == Matrix::Identity(3, 3).array()).all());
  const GaugeDirection d({diag({0.5, -0.5})});
  EXPECT_MATRIX_NEAR(gauge_exp(d, 2.0)[0], diag({std::exp(1.0), std::exp(-1.0)}), 1e-14);
  for (int x = 0; x < 3; ++x) {
    EXPECT_MATRIX_NEAR(gauge_exp(y, 0.7)[x], gauge_exp(y, 0.3)[x] * gauge_exp(y, 0.4)[x], 1e-10);
  }
}

TEST(GaugeExp, SymplecticDirectionsStayInGroup) {
  Rng rng(2);
  const GaugeDirection y = random_symplectic_gauge(2, 2, rng);
  const Matrix j = symplectic_form(2);
  for (const auto& g : gauge_exp(y, 0.3)) EXPECT_MATRIX_NEAR(g.transpose() * j * g, j, 1e-10);
}

TEST(PerturbedSpectrum, Examples) {
  const Cocycle c = positive_cocycle(3);
  Rng rng(3);
  const GaugeDirection y = random_gauge(c.base().size(), 3, rng);
  const WeightVector w = fundamental_weight(1, 3);
  EXPECT_EQ(perturbed_spectrum(c, w, y, 0.0), spectrum_functional(c, w));

  // Commuting diagonal case: exactly linear in t.
  const Cocycle dc = Cocycle::constant(BaseSystem::uniform({1, 0}), diag({3, 1, 1.0 / 3}));
  const GaugeDirection dy = GaugeDirection(std::vector<Matrix>(2, diag({0.2, 0.1, -0.3})));
  for (double t : {-1.0, 0.5, 2.0}) EXPECT_NEAR(perturbed_spectrum(dc, w, dy, t), std::log(3.0) + 0.2 * t, 1e-12);
}

TEST(AnalyticDifferential, ZeroDirection) {
  const Cocycle c = positive_cocycle(4);
  const GaugeDirection zero = GaugeDirection::zero(c.base().size(), 3);
  EXPECT_EQ(analytic_differential(c, fundamental_weight(1, 3), zero), 0.0);
  EXPECT_EQ(oblique_differential(c, fundamental_weight(1, 3), zero), 0.0);
  EXPECT_EQ(ruelle_differential(c, zero), 0.0);
  const auto fd = finite_difference(c, fundamental_weight(1, 3), zero);
  EXPECT_EQ(fd.slope, 0.0);
}

TEST(AnalyticDifferential, DiagonalClosedForm) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({1, 2, 0}), diag({3, 1, 1.0 / 3}));
  Rng rng(5);
  const Matrix ym = random_traceless(3, rng);
  const GaugeDirection y(std::vector<Matrix>(3, ym));
  for (int i = 1; i <= 2; ++i) {
    const WeightVector w = fundamental_weight(i, 3);
    const double want = w(CartanVector::traceless(ym.diagonal()));
    EXPECT_NEAR(analytic_differential(c, w, y), want, 1e-10);
    EXPECT_NEAR(oblique_differential(c, w, y), want, 1e-10);
    EXPECT_NEAR(finite_difference(c, w, y).slope, want, 1e-8);
  }
}

TEST(AnalyticDifferential, AgreesWithFiniteDifferencesForNormalGenerators) {
  // Symmetric positive definite generators: attractor and repeller subspaces are
  // orthogonal, where the orthogonal-projection formula is exact.
  Rng rng(6);
  const int n = 4;
  std::vector<Matrix> gens;
  const Matrix q = random_special_orthogonal(3, rng);
  for (int x = 0; x < n; ++x) gens.push_back(q * diag({2.0 + 0.1 * x, 1.0, 1.0 / (2.0 + 0.1 * x)}) * q.transpose());
  const Cocycle c(BaseSystem::uniform({1, 2, 3, 0}), gens);
  const GaugeDirection y = random_gauge(n, 3, rng);
  const WeightVector w = fundamental_weight(1, 3);
  const double a = analytic_differential(c, w, y);
  EXPECT_LE(std::abs(a - finite_difference(c, w, y).slope) / (1 + std::abs(a)), 1e-5);
}

TEST(ObliqueDifferential, AgreesWithFiniteDifferencesOnSemigroupCocycles) {
  for (const auto& spec : {SemigroupSpec::cone_positive(3), SemigroupSpec::totally_positive(4),
                           SemigroupSpec::minor_positive(4, {1, 3}), SemigroupSpec::symplectic_q(2)}) {
    Rng rng(7);
    const Cocycle c = sample_cocycle(spec, random_base(6, 3, rng), 7);
    for (int k = 0; k < 3; ++k) {
      const GaugeDirection y = sample_gauge(spec, c.base().size(), rng);
      for (const auto& w : weights_outside(predicted_theta(spec))) {
        const double b = oblique_differential(c, w, y);
        EXPECT_LE(std::abs(b - finite_difference(c, w, y).slope) / (1 + std::abs(b)), 1e-5);
      }
    }
  }
}

TEST(AnalyticDifferential, InadmissibleWeight) {
  const Cocycle c = Cocycle::constant(BaseSystem::uniform({0}), diag({2, 2, 0.25}));
  const GaugeDirection y = GaugeDirection::zero(1, 3);
  EXPECT_THROW(analytic_differential(c, fundamental_weight(1, 3), y), WeightNotAdmissible);
  EXPECT_NO_THROW(analytic_differential(c, fundamental_weight(2, 3), y));
}

TEST(AnalyticDifferential, LinearInDirection) {
  const Cocycle c = positive_cocycle(8);
  Rng rng(8);
  const GaugeDirection y1 = random_gauge(c.base().size(), 3, rng), y2 = random_gauge(c.base().size(), 3, rng);
  const WeightVector w = fundamental_weight(1, 3);
  const double lhs = analytic_differential(c, w, y1.combine(1.5, y2, -0.25));
  EXPECT_NEAR(lhs, 1.5 * analytic_differential(c, w, y1) - 0.25 * analytic_differential(c, w, y2), 1e-10);
}

TEST(AnalyticDifferential, IndependentOfFrameRepresentative) {
  const Cocycle c = positive_cocycle(9);
  Rng rng(9);
  const GaugeDirection y = random_gauge(c.base().size(), 3, rng);
  const WeightVector w = fundamental_weight(1, 3);
  Section s = attractor_section(c, section_type_for(w));
  const double ref = analytic_differential_on_section(c, w, y, s);
  for (auto& f : s.flags) f = FlagPoint(f.theta, f.frame * random_stabilizer(f.theta, rng));
  EXPECT_NEAR(analytic_differential_on_section(c, w, y, s), ref, 1e-9);
}

TEST(RuelleDifferential, Examples) {
  const Cocycle d = Cocycle::constant(BaseSystem::uniform({0}), diag({2, 0.5}));
  EXPECT_NEAR(ruelle_differential(d, GaugeDirection({diag({1, -1})})), 1.0, 1e-12);
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    const Cocycle c = positive_cocycle(seed);
    Rng rng(seed);
    const GaugeDirection y = random_gauge(c.base().size(), 3, rng);
    EXPECT_NEAR(ruelle_differential(c, y), analytic_differential(c, fundamental_weight(1, 3), y), 1e-10);
  }
}

TEST(FiniteDifference, OrderEstimateAndValidation) {
  const Cocycle c = positive_cocycle(13);
  Rng rng(13);
  const GaugeDirection y = random_gauge(c.base().size(), 3, rng);
  const auto fd = finite_difference(c, fundamental_weight(1, 3), y, 1e-2);
  // Central differences have error ~h^2, so halving h quarters the correction.
  EXPECT_NEAR(fd.order_estimate, 2.0, 0.2);
  EXPECT_THROW(finite_difference(c, fundamental_weight(1, 3), y, 0.0), ValidationError);

  const Cocycle dc = Cocycle::constant(BaseSystem::uniform({0}), diag({3, 1, 1.0 / 3}));
  const GaugeDirection dy({diag({0.2, 0.1, -0.3})});
  for (double h : {1e-1, 1e-3}) EXPECT_NEAR(finite_difference(dc, fundamental_weight(1, 3), dy, h).slope, 0.2, 1e-10);
}

TEST(SmoothnessScan, CurvesAndGaps) {
  const Cocycle dc = Cocycle::constant(BaseSystem::uniform({0}), diag({3, 1, 1.0 / 3}));
  const GaugeDirection dy({diag({0.2, 0.1, -0.3})});
  const auto rows = smoothness_scan(dc, fundamental_weight(1, 3), dy, {-1, 0, 1, 2});
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    EXPECT_NEAR(rows[k + 1].value - 2 * rows[k].value + rows[k - 1].value, 0.0, 1e-12);
  }
  ASSERT_EQ(rows[0].gaps.size(), 2u);

  // Drive the alpha_1 gap of diag(e, 1, 1/e) closed with Y = diag(-1, 1, 0) at t = 0.5.
  const Cocycle g = Cocycle::constant(BaseSystem::uniform({0}), diag({std::exp(1.0), 1.0, std::exp(-1.0)}));
  const GaugeDirection close({diag({-1, 1, 0})});
  const auto scan = smoothness_scan(g, fundamental_weight(1, 3), close, {0.0, 0.5, 1.0});
  EXPECT_NEAR(scan[1].gaps[0], 0.0, 1e-12);
  EXPECT_TRUE(std::isfinite(scan[2].value));

  // Random cocycle: second differences shrink like dt^2 under refinement.
  const Cocycle c = positive_cocycle(14);
  Rng rng(14);
  const GaugeDirection y = random_gauge(c.base().size(), 3, rng);
  auto second = [&](double dt) {
    const auto r = smoothness_scan(c, fundamental_weight(1, 3), y, {-dt, 0.0, dt});
    return std::abs(r[2].value - 2 * r[1].value + r[0].value);
  };
  const double s1 = second(0.02), s2 = second(0.01);
  EXPECT_NEAR(s1 / s2, 4.0, 0.5);
}
