#include "flaglyap/flagdyn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/random.hpp"

namespace flaglyap {

FlagPoint::FlagPoint(ThetaSet t, Matrix f) : theta(std::move(t)), frame(std::move(f)) {
  if (frame.rows() != theta.dim() || frame.cols() != theta.dim()) {
    throw ValidationError("frame shape differs from flag dimension");
  }
  const double err = (frame.transpose() * frame - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw ValidationError("flag frame is not orthonormal");
}

FlagPoint FlagPoint::standard(const ThetaSet& theta) {
  return FlagPoint(theta, Matrix::Identity(theta.dim(), theta.dim()));
}

FlagPoint FlagPoint::reverse_standard(const ThetaSet& theta) {
  const int d = theta.dim();
  Matrix f = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) f(d - 1 - i, i) = 1.0;
  if (f.determinant() < 0) f.col(d - 1) *= -1.0;
  return FlagPoint(theta, f);
}

FlagPoint act(const Matrix& g, const FlagPoint& xi) {
  FlagPoint out;
  out.theta = xi.theta;
  out.frame = iwasawa(g * xi.frame).k;
  return out;
}

FlagPoint transport(const Cocycle& c, int n, int x, const FlagPoint& xi) {
  FlagPoint out = xi;
  for (int k = 0; k < n; ++k) {
    out = act(c.generator(x), out);
    x = c.base().tau(x);
  }
  return out;
}

double flag_distance(const FlagPoint& a, const FlagPoint& b) {
  if (!(a.theta == b.theta)) throw TypeMismatch("flags of different types");
  double dist = 0.0;
  for (int i : a.theta.complement()) {
    dist = std::max(dist, subspace_distance(a.frame.leftCols(i), b.frame.leftCols(i)));
  }
  return dist;
}

CartanVector cocycle_a(const Cocycle& c, int n, int x, const FlagPoint& xi) {
  if (n < 0) throw ValidationError("cocycle time must be non-negative");
  if (xi.dim() != c.dim()) throw TypeMismatch("flag and cocycle dimensions differ");
  Vector total = Vector::Zero(c.dim());
  Matrix frame = xi.frame;
  for (int k = 0; k < n; ++k) {
    auto f = iwasawa(c.generator(x) * frame);
    total += f.a.values();
    frame = std::move(f.k);
    x = c.base().tau(x);
  }
  return CartanVector::traceless(total);
}

double cocycle_omega(const Cocycle& c, const WeightVector& omega, int n, int x, const FlagPoint& xi) {
  require_admissible(omega, xi.theta);
  return omega(cocycle_a(c, n, x, xi));
}

double invariance_residual(const Cocycle& c, const Section& s) {
  double res = 0.0;
  for (int x = 0; x < c.base().size(); ++x) {
    res = std::max(res, flag_distance(s.flags[c.base().tau(x)], act(c.generator(x), s.flags[x])));
  }
  return res;
}

double section_gap(const Cocycle& c, const ThetaSet& theta) {
  const auto roots = theta.complement();
  if (roots.empty()) return std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& cyc : cycle_decomposition(c.base())) {
    const auto factors = c.period_factors(cyc.points.front());
    const CartanVector h = product_eig_log_moduli(factors) * (1.0 / static_cast<double>(factors.size()));
    for (int i : roots) gap = std::min(gap, simple_root_value(i, h));
  }
  return gap;
}

int default_max_iter(const Cocycle& c, const ThetaSet& theta, double tol) {
  constexpr int kFloor = 500;
  constexpr int kCeiling = 20000;
  const double gap = section_gap(c, theta);
  if (!(gap > default_tolerances().theta_floor)) return kFloor;
  const double want = 10.0 * std::ceil(std::log(1.0 / tol) / gap);
  return static_cast<int>(std::clamp(want, double(kFloor), double(kCeiling)));
}

Section attractor_section(const Cocycle& c, const ThetaSet& theta, const SectionOptions& opts) {
  if (theta.dim() != c.dim()) throw TypeMismatch("flag type and cocycle dimensions differ");
  if (!(opts.tol > 0.0)) throw ValidationError("section tolerance must be positive");
  const auto& base = c.base();
  const int n = base.size();
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : default_max_iter(c, theta, opts.tol);

  Section s;
  s.base = base;
  s.theta = theta;
  std::vector<double> history;
  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    Rng rng(opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    s.flags.clear();
    for (int x = 0; x < n; ++x) s.flags.emplace_back(theta, random_special_orthogonal(c.dim(), rng));
    history.clear();

    std::vector<FlagPoint> images(n);
    for (int it = 0; it < max_iter; ++it) {
      double residual = 0.0;
      for (int x = 0; x < n; ++x) {
        images[x] = act(c.generator(x), s.flags[x]);
        residual = std::max(residual, flag_distance(s.flags[base.tau(x)], images[x]));
      }
      history.push_back(residual);
      if (residual <= opts.tol) {
        s.residual_history = std::move(history);
        s.residual = residual;
        s.restarts = attempt;
        return s;
      }
      for (int x = 0; x < n; ++x) s.flags[base.tau(x)] = std::move(images[x]);
    }
  }
  const double last = history.empty() ? std::numeric_limits<double>::quiet_NaN() : history.back();
  throw NoConvergence(max_iter, last, std::move(history));
}

Section repeller_section(const Cocycle& c, const ThetaSet& theta, const SectionOptions& opts) {
  Section s = attractor_section(inverse_cocycle(c), theta.dual(), opts);
  s.base = c.base();
  return s;
}

std::vector<bool> transversality_check(const Section& s, const Section& s_dual, const Tolerances& tol) {
  if (!(s_dual.theta == s.theta.dual())) throw TypeMismatch("second section must have the dual flag type");
  if (s.flags.size() != s_dual.flags.size()) throw TypeMismatch("sections over different bases");
  const int d = s.theta.dim();
  std::vector<bool> out(s.flags.size(), true);
  for (std::size_t x = 0; x < s.flags.size(); ++x) {
    for (int i : s.theta.complement()) {
      Matrix stacked(d, d);
      stacked << s.flags[x].frame.leftCols(i), s_dual.flags[x].frame.leftCols(d - i);
      Eigen::JacobiSVD<Matrix> svd(stacked);
      if (svd.singularValues()[d - 1] <= tol.transversal) {
        out[x] = false;
        break;
      }
    }
  }
  return out;
}

double fitted_contraction(const std::vector<double>& history) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (history[k] < 0.1 && history[k] > 0.0) pts.emplace_back(double(k), std::log(history[k]));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  return std::exp(sxy / sxx);
}

}  // namespace flaglyap
