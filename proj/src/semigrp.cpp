#include "flaglyap/semigrp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/spectra.hpp"

namespace flaglyap {

namespace {

constexpr int kMaxRejections = 100;

Matrix elementary(int d, int row, int col, double t) {
  Matrix e = Matrix::Identity(d, d);
  e(row, col) = t;
  return e;
}

// L * D * U with L, U products of elementary bidiagonal factors along a
// reduced word of the longest permutation, then d - 1 extra random factors.
Matrix totally_positive_candidate(int d, Rng& rng) {
  std::uniform_real_distribution<double> param(0.3, 1.0);
  std::normal_distribution<double> logdiag(0.0, 0.3);
  Matrix lower = Matrix::Identity(d, d);
  Matrix upper = Matrix::Identity(d, d);
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = d - 1; i >= k; --i) {
      lower = lower * elementary(d, i, i - 1, param(rng));
      upper = elementary(d, i - 1, i, param(rng)) * upper;
    }
  }
  Vector diag(d);
  for (int i = 0; i < d; ++i) diag[i] = logdiag(rng);
  diag.array() -= diag.mean();
  Matrix g = lower * diag.array().exp().matrix().asDiagonal() * upper;
  std::uniform_int_distribution<int> pick(1, d - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int extra = 0; extra < d - 1; ++extra) {
    const int i = pick(rng);
    g = coin(rng) ? Matrix(g * elementary(d, i, i - 1, param(rng))) : Matrix(elementary(d, i - 1, i, param(rng)) * g);
  }
  return g / std::pow(g.determinant(), 1.0 / d);
}

Matrix cone_positive_candidate(int d, Rng& rng) {
  std::uniform_real_distribution<double> entry(0.05, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = entry(rng);
  return g;
}

Matrix symplectic_candidate(int n, Rng& rng) {
  auto spd = [&](int m) {
    const Matrix r = random_gaussian(m, rng, 0.4);
    return Matrix(r * r.transpose() + 0.2 * Matrix::Identity(m, m));
  };
  const Matrix a = random_gaussian(n, rng, 0.2);
  Matrix x(2 * n, 2 * n);
  x << a, spd(n), spd(n), -a.transpose();
  return mat_exp(x);
}

bool minors_positive(const Matrix& g, const std::vector<int>& orders, double threshold) {
  const int d = static_cast<int>(g.rows());
  for (int k : orders) {
    const auto sets = index_subsets(d, k);
    for (const auto& r : sets)
      for (const auto& c : sets) {
        if (minor(g, r, c) <= threshold) return false;
      }
  }
  return true;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::ConePositive: return "cone_positive";
    case Family::TotallyPositive: return "totally_positive";
    case Family::MinorPositive: return "minor_positive";
    case Family::SymplecticQ: return "symplectic_q";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "cone_positive") return Family::ConePositive;
  if (name == "totally_positive") return Family::TotallyPositive;
  if (name == "minor_positive") return Family::MinorPositive;
  if (name == "symplectic_q") return Family::SymplecticQ;
  throw ValidationError("unknown semigroup family '" + name + "'");
}

SemigroupSpec SemigroupSpec::cone_positive(int d) {
  if (d < kMinDim || d > kMaxDim) throw ValidationError("dimension out of range");
  return {Family::ConePositive, d, {}};
}

SemigroupSpec SemigroupSpec::totally_positive(int d) {
  if (d < kMinDim || d > kMaxDim) throw ValidationError("dimension out of range");
  return {Family::TotallyPositive, d, {}};
}

SemigroupSpec SemigroupSpec::minor_positive(int d, std::vector<int> k_set) {
  if (d < kMinDim || d > kMaxDim) throw ValidationError("dimension out of range");
  if (k_set.empty()) throw ValidationError("minor orders must be non-empty");
  for (std::size_t i = 0; i < k_set.size(); ++i) {
    if (k_set[i] < 1 || k_set[i] > d - 1) throw ValidationError("minor order out of range");
    if (i > 0 && k_set[i] <= k_set[i - 1]) throw ValidationError("minor orders must be strictly increasing");
  }
  return {Family::MinorPositive, d, std::move(k_set)};
}

SemigroupSpec SemigroupSpec::symplectic_q(int n) {
  if (n < 1 || 2 * n > kMaxDim) throw ValidationError("symplectic rank out of range");
  return {Family::SymplecticQ, 2 * n, {}};
}

Matrix SemigroupSpec::form() const {
  const int n = half_dim();
  Matrix m = Matrix::Zero(dim_, dim_);
  m.topRightCorner(n, n).setIdentity();
  m.bottomLeftCorner(n, n).setIdentity();
  return m;
}

bool interior_membership(const SemigroupSpec& spec, const Matrix& g, const Tolerances& tol) {
  require_group_element(g, tol);
  if (g.rows() != spec.dim()) throw ValidationError("matrix dimension differs from semigroup ambient");
  const int d = spec.dim();
  switch (spec.family()) {
    case Family::ConePositive:
      return g.minCoeff() > tol.membership;
    case Family::TotallyPositive: {
      std::vector<int> all(d);
      for (int k = 0; k < d; ++k) all[k] = k + 1;
      return minors_positive(g, all, tol.membership);
    }
    case Family::MinorPositive:
      return minors_positive(g, spec.k_set(), tol.membership);
    case Family::SymplecticQ: {
      const Matrix j = symplectic_form(spec.half_dim());
      if ((g.transpose() * j * g - j).cwiseAbs().maxCoeff() > tol.symplectic) {
        throw NotSymplectic("g^T J g differs from J");
      }
      const Matrix m = spec.form();
      Matrix q = g.transpose() * m * g - m;
      q = 0.5 * (q + q.transpose());
      return is_positive_definite(q, tol);
    }
  }
  return false;
}

ThetaSet predicted_theta(const SemigroupSpec& spec) {
  const int d = spec.dim();
  switch (spec.family()) {
    case Family::ConePositive: return ThetaSet::all_but(d, {1});
    case Family::TotallyPositive: return ThetaSet::empty(d);
    case Family::MinorPositive: return ThetaSet::all_but(d, spec.k_set());
    case Family::SymplecticQ: return ThetaSet::all_but(d, {spec.half_dim()});
  }
  return ThetaSet::full(d);
}

Matrix sample_interior(const SemigroupSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const int d = spec.dim();
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Matrix g;
    switch (spec.family()) {
      case Family::ConePositive: {
        g = cone_positive_candidate(d, rng);
        const double det = g.determinant();
        if (det < 1e-3) continue;
        g /= std::pow(det, 1.0 / d);
        break;
      }
      case Family::TotallyPositive:
      case Family::MinorPositive:
        g = totally_positive_candidate(d, rng);
        break;
      case Family::SymplecticQ:
        g = symplectic_candidate(spec.half_dim(), rng);
        break;
    }
    if (is_group_element(g) && interior_membership(spec, g)) return g;
  }
  throw SamplerExhausted("no interior sample after " + std::to_string(kMaxRejections) + " attempts");
}

Cocycle sample_cocycle(const SemigroupSpec& spec, const BaseSystem& base, std::uint64_t seed) {
  std::vector<Matrix> gen;
  Rng seeds(seed);
  for (int x = 0; x < base.size(); ++x) gen.push_back(sample_interior(spec, seeds()));
  return Cocycle(base, std::move(gen));
}

GaugeDirection sample_gauge(const SemigroupSpec& spec, int points, Rng& rng, double scale) {
  if (spec.family() == Family::SymplecticQ) return random_symplectic_gauge(points, spec.half_dim(), rng, scale);
  return random_gauge(points, spec.dim(), rng, scale);
}

GapReport gap_prediction_report(const Cocycle& c, const SemigroupSpec& spec, const GapCheckOptions& opts) {
  for (int x = 0; x < c.base().size(); ++x) {
    if (!interior_membership(spec, c.generator(x))) {
      throw ValidationError("generator at point " + std::to_string(x) + " is not in the semigroup interior");
    }
  }
  GapReport r;
  r.predicted = predicted_theta(spec);
  r.estimated = flag_type_estimate(c);
  r.containment = r.estimated.is_subset_of(r.predicted);
  r.roots = r.predicted.complement();

  r.min_gap = std::numeric_limits<double>::infinity();
  r.min_two_chi_n = std::numeric_limits<double>::infinity();
  const int d = c.dim();
  for (int x = 0; x < c.base().size(); ++x) {
    const CartanVector h = polar_exponent_exact(c, x);
    std::vector<double> row;
    for (int i : r.roots) {
      const double gap = simple_root_value(i, h);
      row.push_back(gap);
      if (gap < r.min_gap) {
        r.min_gap = gap;
        r.min_point = x;
        r.min_root = i;
      }
    }
    r.gaps.push_back(std::move(row));
    if (spec.family() == Family::SymplecticQ) {
      for (int i = 0; i < d; ++i) r.pairing_error = std::max(r.pairing_error, std::abs(h[i] + h[d - 1 - i]));
      r.min_two_chi_n = std::min(r.min_two_chi_n, 2.0 * h[spec.half_dim() - 1]);
    }
  }
  r.gaps_positive = r.min_gap > opts.gap_threshold;
  if (spec.family() == Family::SymplecticQ) {
    r.symplectic_ok = r.pairing_error <= opts.pairing_tol && r.min_two_chi_n > opts.gap_threshold;
  } else {
    r.min_two_chi_n = 0.0;
  }

  if (r.containment && r.gaps_positive) {
    Rng rng(opts.seed);
    for (int i : r.roots) {
      const WeightVector omega = fundamental_weight(i, d);
      for (int k = 0; k < opts.directions; ++k) {
        const GaugeDirection y = sample_gauge(spec, c.base().size(), rng);
        DifferentiabilityResidual res;
        res.weight_index = i;
        res.direction = k;
        res.analytic = analytic_differential(c, omega, y);
        res.finite_difference = finite_difference(c, omega, y, opts.step).slope;
        res.residual = std::abs(res.analytic - res.finite_difference) / (1.0 + std::abs(res.analytic));
        res.passed = res.residual <= opts.differential_tol;
        res.oblique = oblique_differential(c, omega, y);
        res.oblique_residual = std::abs(res.oblique - res.finite_difference) / (1.0 + std::abs(res.oblique));
        r.differentiable = r.differentiable && res.passed;
        r.differentiability.push_back(res);
      }
    }
  } else {
    r.differentiable = false;
  }
  r.passed = r.containment && r.gaps_positive && r.symplectic_ok;
  return r;
}

GapReport verify_gap_predictions(const Cocycle& c, const SemigroupSpec& spec, const GapCheckOptions& opts) {
  GapReport r = gap_prediction_report(c, spec, opts);
  if (!r.containment) {
    const auto& idx = r.estimated.indices();
    int root = -1;
    for (int i : idx) {
      if (!r.predicted.contains(i)) {
        root = i;
        break;
      }
    }
    throw PredictionViolated("estimated flag type " + r.estimated.to_string() + " not contained in " +
                                 r.predicted.to_string(),
                             -1, root);
  }
  if (!r.gaps_positive) {
    throw PredictionViolated("gap alpha_" + std::to_string(r.min_root) + " = " + std::to_string(r.min_gap) +
                                 " at point " + std::to_string(r.min_point),
                             r.min_point, r.min_root);
  }
  if (!r.symplectic_ok) throw PredictionViolated("symplectic pairing or 2 chi_n prediction failed", -1, spec.half_dim());
  // Differentiability is reported but not part of the verdict.
  return r;
}

}  // namespace flaglyap
