#pragma once

// Gauge perturbations x -> exp(t Y(x)) rho(1, x) and the differential of the
// spectrum functionals at the identity.

#include <vector>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/flagdyn.hpp"
#include "flaglyap/random.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

/// Table x -> Y(x) of traceless matrices.
class GaugeDirection {
 public:
  GaugeDirection() = default;
  /// Throws ValidationError if some Y(x) is not traceless or shapes disagree.
  explicit GaugeDirection(std::vector<Matrix> table);
  /// Additionally requires every Y(x) to lie in sp(2n): Y^T J + J Y = 0.
  static GaugeDirection symplectic(std::vector<Matrix> table);
  static GaugeDirection zero(int points, int dim);

  int size() const { return static_cast<int>(table_.size()); }
  int dim() const { return table_.empty() ? 0 : static_cast<int>(table_.front().rows()); }
  const Matrix& operator[](int x) const { return table_[x]; }
  const std::vector<Matrix>& table() const { return table_; }

  /// a * this + b * other.
  GaugeDirection combine(double a, const GaugeDirection& other, double b) const;

 private:
  std::vector<Matrix> table_;
};

/// J = [[0, I], [-I, 0]] of size 2n.
Matrix symplectic_form(int n);
/// [[A, B], [C, -A^T]] with B, C symmetric.
Matrix random_symplectic_algebra(int n, Rng& rng, double scale = 1.0);

GaugeDirection random_gauge(int points, int dim, Rng& rng, double scale = 1.0);
GaugeDirection random_symplectic_gauge(int points, int n, Rng& rng, double scale = 1.0);

/// x -> exp(t Y(x)).
std::vector<Matrix> gauge_exp(const GaugeDirection& y, double t);

/// Lambda_omega of the cocycle x -> exp(t Y(x)) rho(1, x), exact oracle.
double perturbed_spectrum(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y, double t);

struct DifferentialOptions {
  SectionOptions section{};
  double theta_eps = 0.0;  // <= 0 selects default_theta_eps
};

/// Type of the attractor section used for omega: Sigma minus the support of omega.
ThetaSet section_type_for(const WeightVector& omega);

/// Closed-form differential at the identity:
///   sum_x nu(x) omega(a-part of Ad(u_x^{-1}) Y(x)),
/// where rho(1, x) k_x = u_x h n and k_x frames the attractor section.
/// Throws WeightNotAdmissible if omega is not admissible for the estimated
/// flag type, NoConvergence if the section solver fails.
double analytic_differential(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                             const DifferentialOptions& opts = {});

/// Same formula evaluated on a given section (any frame representatives).
double analytic_differential_on_section(const Cocycle& c, const WeightVector& omega,
                                        const GaugeDirection& y, const Section& s);

/// sum_x nu(x) <Y(x) w, w> / |w|^2 with w = rho(1, x) v(x), v(x) the unit
/// vector spanning the projective attractor section.
/// Differential of Lambda_omega at the identity built from oblique projections:
/// sum_x nu(x) sum_i m_i tr(P_i(tau x) Y(x)), with P_i the projection onto the
/// i-dimensional attractor subspace along the (d-i)-dimensional repeller
/// subspace and m_i the fundamental coordinates of omega. Coincides with
/// analytic_differential when every attractor subspace is orthogonal to the
/// matching repeller subspace.
double oblique_differential(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                            const DifferentialOptions& opts = {});

double oblique_differential_on_sections(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                        const Section& attractor, const Section& repeller);

double ruelle_differential(const Cocycle& c, const GaugeDirection& y, const SectionOptions& opts = {});

struct FiniteDifference {
  double slope = 0.0;           // Richardson combination of steps h and h/2
  double order_estimate = 0.0;  // log2 of the ratio of successive corrections
  double central_h = 0.0;
  double central_h2 = 0.0;
  double central_h4 = 0.0;
};

/// Central differences of t -> Lambda_omega(t) at h, h/2, h/4 with one
/// Richardson step. order_estimate is NaN when the corrections vanish.
FiniteDifference finite_difference(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                   double h = 1e-4);

struct ScanRow {
  double t = 0.0;
  double value = 0.0;
  std::vector<double> gaps;  // alpha_i of the mean spectrum at t
};

std::vector<ScanRow> smoothness_scan(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                     const std::vector<double>& t_grid);

}  // namespace flaglyap
