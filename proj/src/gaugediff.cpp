#include "flaglyap/gaugediff.hpp"

#include <cmath>
#include <limits>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/spectra.hpp"

namespace flaglyap {

GaugeDirection::GaugeDirection(std::vector<Matrix> table) : table_(std::move(table)) {
  if (table_.empty()) throw ValidationError("gauge direction needs at least one point");
  for (const auto& y : table_) {
    if (y.rows() != table_.front().rows()) throw ValidationError("gauge matrices have different shapes");
    require_algebra_element(y);
  }
}

Matrix symplectic_form(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

GaugeDirection GaugeDirection::symplectic(std::vector<Matrix> table) {
  GaugeDirection y(std::move(table));
  if (y.dim() % 2 != 0) throw ValidationError("symplectic gauge needs even dimension");
  const Matrix j = symplectic_form(y.dim() / 2);
  for (const auto& m : y.table_) {
    if ((m.transpose() * j + j * m).cwiseAbs().maxCoeff() > 1e-9) {
      throw ValidationError("gauge matrix is not in the symplectic algebra");
    }
  }
  return y;
}

GaugeDirection GaugeDirection::zero(int points, int dim) {
  return GaugeDirection(std::vector<Matrix>(points, Matrix::Zero(dim, dim)));
}

GaugeDirection GaugeDirection::combine(double a, const GaugeDirection& other, double b) const {
  if (other.size() != size()) throw TypeMismatch("gauge directions over different bases");
  std::vector<Matrix> out(table_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = a * table_[x] + b * other.table_[x];
  return GaugeDirection(std::move(out));
}

Matrix random_symplectic_algebra(int n, Rng& rng, double scale) {
  const Matrix a = random_gaussian(n, rng, scale);
  const Matrix b = random_gaussian(n, rng, scale);
  const Matrix c = random_gaussian(n, rng, scale);
  Matrix y(2 * n, 2 * n);
  y << a, b + b.transpose(), c + c.transpose(), -a.transpose();
  return y;
}

GaugeDirection random_gauge(int points, int dim, Rng& rng, double scale) {
  std::vector<Matrix> t;
  for (int x = 0; x < points; ++x) t.push_back(random_traceless(dim, rng, scale));
  return GaugeDirection(std::move(t));
}

GaugeDirection random_symplectic_gauge(int points, int n, Rng& rng, double scale) {
  std::vector<Matrix> t;
  for (int x = 0; x < points; ++x) t.push_back(random_symplectic_algebra(n, rng, scale));
  return GaugeDirection::symplectic(std::move(t));
}

std::vector<Matrix> gauge_exp(const GaugeDirection& y, double t) {
  std::vector<Matrix> out;
  out.reserve(y.size());
  for (const auto& m : y.table()) out.push_back(mat_exp(t * m));
  return out;
}

double perturbed_spectrum(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y, double t) {
  if (y.size() != c.base().size()) throw TypeMismatch("gauge direction and cocycle bases differ");
  if (t == 0.0) return spectrum_functional(c, omega);
  return spectrum_functional(perturb(c, gauge_exp(y, t)), omega);
}

ThetaSet section_type_for(const WeightVector& omega) {
  return ThetaSet::all_but(omega.dim(), weight_support(omega));
}

double analytic_differential_on_section(const Cocycle& c, const WeightVector& omega,
                                        const GaugeDirection& y, const Section& s) {
  if (y.size() != c.base().size()) throw TypeMismatch("gauge direction and cocycle bases differ");
  require_admissible(omega, s.theta);
  double total = 0.0;
  for (int x = 0; x < c.base().size(); ++x) {
    const Matrix u = iwasawa(c.generator(x) * s.flags[x].frame).k;
    // Ad(u^{-1}) Y = u^T Y u for orthogonal u.
    const Matrix z = u.transpose() * y[x] * u;
    total += c.base().nu(x) * omega(a_projection(z));
  }
  return total;
}

double analytic_differential(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                             const DifferentialOptions& opts) {
  require_admissible(omega, flag_type_estimate(c, opts.theta_eps));
  const Section s = attractor_section(c, section_type_for(omega), opts.section);
  return analytic_differential_on_section(c, omega, y, s);
}

double oblique_differential_on_sections(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                        const Section& attractor, const Section& repeller) {
  if (y.size() != c.base().size()) throw TypeMismatch("gauge direction and cocycle bases differ");
  if (!(repeller.theta == attractor.theta.dual())) throw TypeMismatch("repeller section must have the dual flag type");
  require_admissible(omega, attractor.theta);
  const Vector m = omega.fundamental_coordinates();
  double total = 0.0;
  for (int x = 0; x < c.base().size(); ++x) {
    const int z = c.base().tau(x);
    for (int i : attractor.theta.complement()) {
      if (m[i - 1] == 0.0) continue;
      const Matrix u = attractor.flags[z].frame.leftCols(i);
      const Matrix w = repeller.flags[z].frame.rightCols(i);
      const Eigen::PartialPivLU<Matrix> lu(w.transpose() * u);
      total += c.base().nu(x) * m[i - 1] * lu.solve(w.transpose() * y[x] * u).trace();
    }
  }
  return total;
}

double oblique_differential(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                            const DifferentialOptions& opts) {
  require_admissible(omega, flag_type_estimate(c, opts.theta_eps));
  const ThetaSet theta = section_type_for(omega);
  const Section att = attractor_section(c, theta, opts.section);
  const Section rep = repeller_section(c, theta, opts.section);
  return oblique_differential_on_sections(c, omega, y, att, rep);
}

double ruelle_differential(const Cocycle& c, const GaugeDirection& y, const SectionOptions& opts) {
  if (y.size() != c.base().size()) throw TypeMismatch("gauge direction and cocycle bases differ");
  const Section s = attractor_section(c, ThetaSet::all_but(c.dim(), {1}), opts);
  double total = 0.0;
  for (int x = 0; x < c.base().size(); ++x) {
    const Vector w = c.generator(x) * s.flags[x].frame.col(0);
    total += c.base().nu(x) * w.dot(y[x] * w) / w.squaredNorm();
  }
  return total;
}

FiniteDifference finite_difference(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                   double h) {
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  auto central = [&](double step) {
    return (perturbed_spectrum(c, omega, y, step) - perturbed_spectrum(c, omega, y, -step)) / (2.0 * step);
  };
  FiniteDifference fd;
  fd.central_h = central(h);
  fd.central_h2 = central(h / 2.0);
  fd.central_h4 = central(h / 4.0);
  fd.slope = (4.0 * fd.central_h2 - fd.central_h) / 3.0;
  const double c1 = fd.central_h - fd.central_h2;
  const double c2 = fd.central_h2 - fd.central_h4;
  fd.order_estimate = (c1 != 0.0 && c2 != 0.0) ? std::log2(std::abs(c1 / c2))
                                               : std::numeric_limits<double>::quiet_NaN();
  return fd;
}

std::vector<ScanRow> smoothness_scan(const Cocycle& c, const WeightVector& omega, const GaugeDirection& y,
                                     const std::vector<double>& t_grid) {
  std::vector<ScanRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!std::isfinite(t)) throw ValidationError("scan grid must be finite");
    const Cocycle ct = t == 0.0 ? c : perturb(c, gauge_exp(y, t));
    ScanRow row;
    row.t = t;
    row.value = spectrum_functional(ct, omega);
    const CartanVector mean = mean_spectrum(ct);
    for (int i = 1; i < c.dim(); ++i) row.gaps.push_back(simple_root_value(i, mean));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace flaglyap
