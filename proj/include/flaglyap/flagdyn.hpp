#pragma once

// Flags, the induced cocycle dynamics on flag bundles, and Morse sections.

#include <cstdint>
#include <vector>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/tolerances.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

/// Flag of type theta represented by an orthonormal frame. The flag consists
/// of the spans of the first i columns for every i not in theta.
struct FlagPoint {
  ThetaSet theta;
  Matrix frame;

  FlagPoint() = default;
  /// Throws ValidationError unless frame^T frame = I to 1e-10.
  FlagPoint(ThetaSet theta, Matrix frame);

  static FlagPoint standard(const ThetaSet& theta);
  /// Spans of e_d, e_{d-1}, ...; opposite to the standard flag.
  static FlagPoint reverse_standard(const ThetaSet& theta);
  int dim() const { return theta.dim(); }
};

/// Per-point table of flags of one type.
struct Section {
  BaseSystem base;
  ThetaSet theta;
  std::vector<FlagPoint> flags;
  /// sup_x distance(sigma(tau x), rho(1, x) sigma(x)) after each sweep.
  std::vector<double> residual_history;
  double residual = 0.0;
  int restarts = 0;
};

struct SectionOptions {
  double tol = 1e-10;
  int max_iter = 0;  // 0 selects a gap-based default
  std::uint64_t seed = 0x5eed;
  int restarts = 3;
};

/// Flag with frame equal to the K-part of the Iwasawa decomposition of g * frame.
FlagPoint act(const Matrix& g, const FlagPoint& xi);

/// act(rho(1, tau^{n-1} x), ... act(rho(1, x), xi)), one factor at a time.
FlagPoint transport(const Cocycle& c, int n, int x, const FlagPoint& xi);

/// Maximum over the flag's subspaces of the sine of the largest principal angle.
double flag_distance(const FlagPoint& a, const FlagPoint& b);

/// a-valued cocycle a(n, x, xi): the A-part of rho(n, x) applied to the frame
/// of xi, accumulated step by step with re-orthonormalization.
CartanVector cocycle_a(const Cocycle& c, int n, int x, const FlagPoint& xi);

/// omega(a(n, x, xi)) for omega admissible on the type of xi. Throws
/// WeightNotAdmissible otherwise.
double cocycle_omega(const Cocycle& c, const WeightVector& omega, int n, int x, const FlagPoint& xi);

/// sup_x distance(sigma(tau x), rho(1, x) sigma(x)).
double invariance_residual(const Cocycle& c, const Section& s);

/// Smallest simple-root gap outside theta over all cycles, from exact periodic
/// exponents. Non-positive when a required gap is closed.
double section_gap(const Cocycle& c, const ThetaSet& theta);

/// 10 * ceil(log(1/tol) / gap), clamped to [500, 20000].
int default_max_iter(const Cocycle& c, const ThetaSet& theta, double tol);

/// Attractor section by iterating the graph transform from a random seeded
/// section. Throws NoConvergence with the residual history when the residual
/// stays above tol after the initial run and every restart.
Section attractor_section(const Cocycle& c, const ThetaSet& theta, const SectionOptions& opts = {});

/// Attractor section of the inverse cocycle on the dual flag type.
Section repeller_section(const Cocycle& c, const ThetaSet& theta, const SectionOptions& opts = {});

/// Per point: true iff each subspace of s meets the complementary-dimension
/// subspace of s_dual trivially. Throws TypeMismatch unless s_dual has the dual type.
std::vector<bool> transversality_check(const Section& s, const Section& s_dual,
                                       const Tolerances& tol = default_tolerances());

/// exp of the slope of a least-squares line through log residuals below 0.1.
double fitted_contraction(const std::vector<double>& history);

}  // namespace flaglyap
