#include <gtest/gtest.h>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/errors.hpp"
#include "flaglyap/random.hpp"
#include "test_util.hpp"

using namespace flaglyap;
using namespace flaglyap::testing;

TEST(BaseSystem, ValidatesPermutationAndMeasure) {
  EXPECT_THROW(BaseSystem({0, 0}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(BaseSystem({1, 2}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(BaseSystem({0, 1}, {1.0, 0.0}), ValidationError);
  // not tau-invariant: 0 and 1 are swapped but carry different mass
  EXPECT_THROW(BaseSystem({1, 0}, {0.7, 0.3}), ValidationError);
  const BaseSystem b({1, 0, 2}, {1.0, 1.0, 2.0});
  EXPECT_NEAR(b.nu(0), 0.25, 1e-15);
  EXPECT_NEAR(b.nu(2), 0.5, 1e-15);
}

TEST(BaseSystem, FromCycles) {
  const BaseSystem b = BaseSystem::from_cycles(5, {{0, 3}, {1, 2, 4}});
  EXPECT_EQ(b.tau(0), 3);
  EXPECT_EQ(b.tau(3), 0);
  EXPECT_EQ(b.tau(4), 1);
  EXPECT_EQ(b.period(2), 3);
  EXPECT_EQ(b.tau_inv(1), 4);
  EXPECT_EQ(b.iterate(1, 7), 2);
  EXPECT_THROW(BaseSystem::from_cycles(3, {{0, 1}}), ValidationError);
  EXPECT_THROW(BaseSystem::from_cycles(3, {{0, 1}, {1, 2}}), ValidationError);
  EXPECT_THROW(BaseSystem::from_cycles(2, {{0, 5}}), ValidationError);
}

TEST(CycleDecomposition, Examples) {
  EXPECT_EQ(cycle_decomposition(BaseSystem::uniform({0, 1, 2})).size(), 3u);
  const auto single = cycle_decomposition(BaseSystem::uniform({1, 2, 3, 0}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].points.size(), 4u);
  EXPECT_NEAR(single[0].measure, 1.0, 1e-15);
  const auto two = cycle_decomposition(BaseSystem::uniform({1, 0, 2}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].points, (std::vector<int>{0, 1}));
  EXPECT_EQ(two[1].points, (std::vector<int>{2}));
  EXPECT_NEAR(two[0].measure, 2.0 / 3.0, 1e-15);
}

TEST(Cocycle, RejectsNonUnitDeterminant) {
  EXPECT_THROW(Cocycle(BaseSystem::uniform({0}), {diag({2, 1})}), DeterminantError);
  EXPECT_THROW(Cocycle(BaseSystem::uniform({1, 0}), {diag({2, 0.5})}), ValidationError);
}

TEST(CocycleStep, Examples) {
  Rng rng(1);
  const Matrix g0 = random_sl(3, rng), g1 = random_sl(3, rng);
  const Cocycle swap(BaseSystem::uniform({1, 0}), {g0, g1});
  EXPECT_MATRIX_NEAR(cocycle_step(swap, 0, 0), Matrix::Identity(3, 3), 0.0);
  EXPECT_MATRIX_NEAR(cocycle_step(swap, 2, 0), g1 * g0, 1e-14);
  const Cocycle fixed = Cocycle::constant(BaseSystem::uniform({0}), g0);
  EXPECT_MATRIX_NEAR(cocycle_step(fixed, 3, 0), g0 * g0 * g0, 1e-12);
}

TEST(CocycleStep, FlowProperty) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const BaseSystem b = random_base(7, 4, rng);
    std::vector<Matrix> gens;
    for (int x = 0; x < b.size(); ++x) gens.push_back(random_sl(3, rng));
    const Cocycle c(b, gens);
    for (int n = 0; n <= 10; n += 3) {
      for (int m = 0; m <= 10; m += 4) {
        for (int x = 0; x < b.size(); ++x) {
          const Matrix lhs = cocycle_step(c, n + m, x);
          const Matrix rhs = cocycle_step(c, n, b.iterate(x, m)) * cocycle_step(c, m, x);
          EXPECT_LE((lhs - rhs).norm() / lhs.norm(), 1e-9);
        }
      }
    }
  }
}

TEST(Perturb, Examples) {
  Rng rng(3);
  const BaseSystem b = BaseSystem::uniform({1, 2, 0});
  std::vector<Matrix> gens{random_sl(2, rng), random_sl(2, rng), random_sl(2, rng)};
  const Cocycle c(b, gens);
  const Cocycle same = perturb(c, std::vector<Matrix>(3, Matrix::Identity(2, 2)));
  for (int x = 0; x < 3; ++x) EXPECT_MATRIX_NEAR(same.generator(x), c.generator(x), 0.0);

  const Matrix h = diag({2, 0.5});
  const Cocycle k = Cocycle::constant(BaseSystem::uniform({0}), gens[0]);
  EXPECT_MATRIX_NEAR(perturb(k, {h}).generator(0), h * gens[0], 1e-15);

  std::vector<Matrix> f, finv;
  for (int x = 0; x < 3; ++x) {
    f.push_back(random_sl(2, rng));
    finv.push_back(f.back().inverse());
  }
  const Cocycle back = perturb(perturb(c, f), finv);
  for (int x = 0; x < 3; ++x) EXPECT_MATRIX_NEAR(back.generator(x), c.generator(x), 1e-12);
  EXPECT_THROW(perturb(c, std::vector<Matrix>(3, diag({2, 1}))), DeterminantError);
}

TEST(InverseCocycle, RunsBackwards) {
  Rng rng(4);
  const BaseSystem b = BaseSystem::uniform({1, 2, 0});
  const Cocycle c(b, {random_sl(3, rng), random_sl(3, rng), random_sl(3, rng)});
  const Cocycle inv = inverse_cocycle(c);
  for (int x = 0; x < 3; ++x) {
    EXPECT_EQ(inv.base().tau(x), b.tau_inv(x));
    EXPECT_MATRIX_NEAR(inv.generator(x) * c.generator(b.tau_inv(x)), Matrix::Identity(3, 3), 1e-12);
  }
}
