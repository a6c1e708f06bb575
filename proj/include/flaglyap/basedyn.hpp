#pragma once

// Finite measured base dynamics and matrix cocycles over them.

#include <vector>

#include "flaglyap/tolerances.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

struct Cycle {
  std::vector<int> points;  // x, tau(x), tau^2(x), ...
  double measure = 0.0;     // total nu-mass of the cycle
};

/// Permutation tau of {0..N-1} with a strictly positive tau-invariant
/// probability measure nu.
class BaseSystem {
 public:
  BaseSystem() = default;
  /// Normalizes nu to a probability vector; throws ValidationError if tau is
  /// not a permutation, nu is not strictly positive, or nu is not tau-invariant.
  BaseSystem(std::vector<int> tau, std::vector<double> nu);

  /// Uniform measure.
  static BaseSystem uniform(std::vector<int> tau);
  /// Base built from disjoint cycles covering {0..n-1}.
  static BaseSystem from_cycles(int n, const std::vector<std::vector<int>>& cycles,
                                std::vector<double> nu = {});

  int size() const { return static_cast<int>(tau_.size()); }
  int tau(int x) const { return tau_[x]; }
  int tau_inv(int x) const { return tau_inv_[x]; }
  /// tau^n(x) for n >= 0.
  int iterate(int x, int n) const;
  double nu(int x) const { return nu_[x]; }
  const std::vector<int>& permutation() const { return tau_; }
  const std::vector<double>& measure() const { return nu_; }
  /// Length of the tau-cycle through x.
  int period(int x) const;

  BaseSystem inverse() const;

 private:
  std::vector<int> tau_;
  std::vector<int> tau_inv_;
  std::vector<double> nu_;
};

/// Disjoint cycles covering X in order of their smallest point.
std::vector<Cycle> cycle_decomposition(const BaseSystem& b);

/// Cocycle rho over (X, tau) given by its generator table x -> rho(1, x).
class Cocycle {
 public:
  Cocycle() = default;
  /// Throws DeterminantError if a generator is not in SL(d, R).
  Cocycle(BaseSystem base, std::vector<Matrix> generators,
          const Tolerances& tol = default_tolerances());

  /// Same generator g at every point.
  static Cocycle constant(BaseSystem base, const Matrix& g);

  const BaseSystem& base() const { return base_; }
  int dim() const { return dim_; }
  const Matrix& generator(int x) const { return gen_[x]; }
  const std::vector<Matrix>& generators() const { return gen_; }

  /// rho(1, x), rho(1, tau x), ... rho(1, tau^{n-1} x) in application order.
  std::vector<Matrix> orbit_factors(int x, int n) const;
  /// Generators along the full cycle through x.
  std::vector<Matrix> period_factors(int x) const;

 private:
  BaseSystem base_;
  std::vector<Matrix> gen_;
  int dim_ = 0;
};

/// rho(n, x) = rho(1, tau^{n-1} x) ... rho(1, x); rho(0, x) = I.
Matrix cocycle_step(const Cocycle& c, int n, int x);

/// Cocycle generated by x -> f(x) rho(1, x). Throws DeterminantError if some
/// f(x) is not in SL(d, R).
Cocycle perturb(const Cocycle& c, const std::vector<Matrix>& f);

/// Cocycle of the inverse flow: over tau^{-1}, generator x -> rho(1, tau^{-1} x)^{-1}.
Cocycle inverse_cocycle(const Cocycle& c);

}  // namespace flaglyap
