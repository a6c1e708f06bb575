#pragma once

// Polar exponents, spectrum functionals and flag-type estimation.

#include <cstdint>
#include <string>
#include <vector>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/flagdyn.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

enum class SpectrumMethod { FiniteN, ExactPeriodic };

std::string to_string(SpectrumMethod m);

struct SpectrumReport {
  SpectrumMethod method = SpectrumMethod::ExactPeriodic;
  int horizon = 0;                      // n for the finite-n method
  std::vector<CartanVector> per_point;  // H+(x)
  CartanVector mean;                    // sum_x nu(x) H+(x)
  std::vector<double> gaps;             // alpha_i(mean), i = 1..d-1
  double theta_eps = 0.0;
  ThetaSet theta;                       // estimated flag type
};

/// (1/n) log singular values of rho(n, x), accumulated without forming the product.
CartanVector polar_exponent_finite(const Cocycle& c, int x, int n);

/// (1/L) log eigenvalue moduli of the period map rho(L, x).
CartanVector polar_exponent_exact(const Cocycle& c, int x);

/// nu-weighted mean of the exact polar exponents.
CartanVector mean_spectrum(const Cocycle& c);

/// Lambda_omega = sum_x nu(x) omega(H+(x)) via the exact periodic oracle.
double spectrum_functional(const Cocycle& c, const WeightVector& omega);

/// sum_x nu(x) omega(a(1, x, sigma(x))) over the attractor section of type theta.
double spectrum_via_section(const Cocycle& c, const WeightVector& omega, const ThetaSet& theta,
                            const SectionOptions& opts = {});

/// (1/n) a(n, x, xi).
CartanVector lyapunov_of_flag(const Cocycle& c, int x, const FlagPoint& xi, int n);

struct WeylCheck {
  bool passed = false;
  double max_error = 0.0;
  std::vector<std::vector<int>> orderings;  // eigenvector order defining each flag
  std::vector<CartanVector> realized;       // Lyapunov vector of each eigenflag
  std::vector<CartanVector> expected;       // the matching permutation of H+(x)
};

/// Lyapunov vectors of the eigenflags of the period map at x against the Weyl
/// orbit of H+(x). All d! orderings for d <= 4, else 10 seeded samples.
/// Any horizon n >= 1 gives the same answer: eigenflags are invariant under the
/// period map, so the limit is evaluated exactly over one period. Throws
/// DegenerateSpectrum if the eigenvalue moduli are not distinct.
WeylCheck weyl_relation_check(const Cocycle& c, int x, int n, double tol = 1e-6,
                              std::uint64_t seed = 17);

/// theta_of(mean spectrum, eps); eps <= 0 selects default_theta_eps.
ThetaSet flag_type_estimate(const Cocycle& c, double eps = 0.0);

SpectrumReport spectrum_report(const Cocycle& c, SpectrumMethod method = SpectrumMethod::ExactPeriodic,
                               int horizon = 0, double eps = 0.0);

}  // namespace flaglyap
