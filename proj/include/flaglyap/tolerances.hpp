#pragma once

namespace flaglyap {

/// Numerical thresholds shared by all modules.
struct Tolerances {
  double det = 1e-9;             // |det g - 1| for group elements
  double trace = 1e-9;           // |tr Z| for algebra elements
  double pivot = 1e-14;          // smallest admissible triangular pivot
  double symmetry = 1e-10;       // symmetric-input check
  double pd_minor = 1e-12;       // leading minors for positive definiteness
  double membership = 1e-12;     // strict positivity in semigroup interiors
  double symplectic = 1e-8;      // |g^T J g - J|
  double section = 1e-10;        // graph-transform residual
  double transversal = 1e-8;     // smallest singular value for transversality
  double weight_span = 1e-9;     // fundamental-weight coefficient on Theta
  double distinct_moduli = 1e-8; // relative separation of eigenvalue moduli
  double theta_relative = 1e-6;  // flag-type gap, relative to the largest gap
  double theta_floor = 1e-12;    // absolute floor under the relative flag-type tolerance
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace flaglyap
