#include "flaglyap/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/random.hpp"

namespace flaglyap {

std::string to_string(SpectrumMethod m) {
  return m == SpectrumMethod::FiniteN ? "finite-n" : "exact-periodic";
}

CartanVector polar_exponent_finite(const Cocycle& c, int x, int n) {
  if (n < 1) throw ValidationError("horizon must be at least 1");
  return product_log_singular_values(c.orbit_factors(x, n)) * (1.0 / n);
}

CartanVector polar_exponent_exact(const Cocycle& c, int x) {
  const auto factors = c.period_factors(x);
  return product_eig_log_moduli(factors) * (1.0 / static_cast<double>(factors.size()));
}

CartanVector mean_spectrum(const Cocycle& c) {
  Vector total = Vector::Zero(c.dim());
  for (int x = 0; x < c.base().size(); ++x) total += c.base().nu(x) * polar_exponent_exact(c, x).values();
  return CartanVector::traceless(total);
}

double spectrum_functional(const Cocycle& c, const WeightVector& omega) {
  double total = 0.0;
  for (int x = 0; x < c.base().size(); ++x) total += c.base().nu(x) * omega(polar_exponent_exact(c, x));
  return total;
}

double spectrum_via_section(const Cocycle& c, const WeightVector& omega, const ThetaSet& theta,
                            const SectionOptions& opts) {
  require_admissible(omega, theta);
  const Section s = attractor_section(c, theta, opts);
  double total = 0.0;
  for (int x = 0; x < c.base().size(); ++x) {
    total += c.base().nu(x) * cocycle_omega(c, omega, 1, x, s.flags[x]);
  }
  return total;
}

CartanVector lyapunov_of_flag(const Cocycle& c, int x, const FlagPoint& xi, int n) {
  if (n < 1) throw ValidationError("horizon must be at least 1");
  return cocycle_a(c, n, x, xi) * (1.0 / n);
}

WeylCheck weyl_relation_check(const Cocycle& c, int x, int n, double tol, std::uint64_t seed) {
  const int d = c.dim();
  const int period = c.base().period(x);
  if (n < 1) throw ValidationError("horizon must be at least 1");

  Eigen::EigenSolver<Matrix> es(cocycle_step(c, period, x));
  if (es.info() != Eigen::Success) throw DecompositionFailure("eigenvalue iteration failed");
  const auto& lambda = es.eigenvalues();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(lambda[a]) > std::abs(lambda[b]); });
  Vector logs(d);
  for (int k = 0; k < d; ++k) logs[k] = std::log(std::abs(lambda[order[k]]));
  const auto& dt = default_tolerances();
  for (int k = 0; k + 1 < d; ++k) {
    if (logs[k] - logs[k + 1] <= dt.distinct_moduli * std::max(1.0, std::abs(logs[k]))) {
      throw DegenerateSpectrum("period map eigenvalue moduli are not distinct");
    }
  }
  Matrix vecs(d, d);
  for (int k = 0; k < d; ++k) vecs.col(k) = es.eigenvectors().col(order[k]).real();
  const Vector h_plus = logs / static_cast<double>(period);

  std::vector<std::vector<int>> perms;
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  if (d <= 4) {
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  } else {
    Rng rng(seed);
    for (int s = 0; s < 10; ++s) {
      std::shuffle(p.begin(), p.end(), rng);
      perms.push_back(p);
    }
  }

  WeylCheck out;
  for (const auto& perm : perms) {
    Matrix cols(d, d);
    Vector expected(d);
    for (int k = 0; k < d; ++k) {
      cols.col(k) = vecs.col(perm[k]);
      expected[k] = h_plus[perm[k]];
    }
    if (cols.determinant() < 0) cols.col(0) *= -1.0;
    const FlagPoint xi(ThetaSet::empty(d), iwasawa(cols).k);
    // Eigenflags are exactly periodic, so a(k * period) = k * a(period) and the
    // limit is attained at one period. Iterating an unstable eigenflag k times
    // would only amplify rounding by e^{k * gap}.
    const CartanVector got = lyapunov_of_flag(c, x, xi, period);
    const CartanVector want = CartanVector::traceless(expected);
    out.max_error = std::max(out.max_error, (got.values() - want.values()).cwiseAbs().maxCoeff());
    out.orderings.push_back(perm);
    out.realized.push_back(got);
    out.expected.push_back(want);
  }
  out.passed = out.max_error <= tol;
  return out;
}

ThetaSet flag_type_estimate(const Cocycle& c, double eps) {
  const CartanVector mean = mean_spectrum(c);
  return theta_of(mean, eps > 0.0 ? eps : default_theta_eps(mean));
}

SpectrumReport spectrum_report(const Cocycle& c, SpectrumMethod method, int horizon, double eps) {
  SpectrumReport r;
  r.method = method;
  r.horizon = method == SpectrumMethod::FiniteN ? horizon : 0;
  Vector total = Vector::Zero(c.dim());
  for (int x = 0; x < c.base().size(); ++x) {
    r.per_point.push_back(method == SpectrumMethod::FiniteN ? polar_exponent_finite(c, x, horizon)
                                                            : polar_exponent_exact(c, x));
    total += c.base().nu(x) * r.per_point.back().values();
  }
  r.mean = CartanVector::traceless(total);
  for (int i = 1; i < c.dim(); ++i) r.gaps.push_back(simple_root_value(i, r.mean));
  r.theta_eps = eps > 0.0 ? eps : default_theta_eps(r.mean);
  r.theta = theta_of(r.mean, r.theta_eps);
  return r;
}

}  // namespace flaglyap
