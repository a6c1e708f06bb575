#include "flaglyap/basedyn.hpp"

#include <cmath>
#include <numeric>

#include "flaglyap/errors.hpp"
#include "flaglyap/matkit.hpp"

namespace flaglyap {

BaseSystem::BaseSystem(std::vector<int> tau, std::vector<double> nu)
    : tau_(std::move(tau)), nu_(std::move(nu)) {
  const int n = size();
  if (n == 0) throw ValidationError("base system must have at least one point");
  if (static_cast<int>(nu_.size()) != n) throw ValidationError("measure length differs from base size");
  tau_inv_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    const int y = tau_[x];
    if (y < 0 || y >= n || tau_inv_[y] != -1) {
      throw ValidationError("tau is not a permutation of {0.." + std::to_string(n - 1) + "}");
    }
    tau_inv_[y] = x;
  }
  double total = 0.0;
  for (double w : nu_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("measure must be strictly positive");
    total += w;
  }
  for (double& w : nu_) w /= total;
  for (int x = 0; x < n; ++x) {
    if (std::abs(nu_[tau_[x]] - nu_[x]) > 1e-12 * std::max(1.0, nu_[x])) {
      throw ValidationError("measure is not tau-invariant at point " + std::to_string(x));
    }
  }
}

BaseSystem BaseSystem::uniform(std::vector<int> tau) {
  const auto n = tau.size();
  return BaseSystem(std::move(tau), std::vector<double>(n, 1.0));
}

BaseSystem BaseSystem::from_cycles(int n, const std::vector<std::vector<int>>& cycles,
                                   std::vector<double> nu) {
  if (n <= 0) throw ValidationError("base size must be positive");
  std::vector<int> tau(n, -1);
  for (const auto& cyc : cycles) {
    if (cyc.empty()) throw ValidationError("empty cycle");
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int x = cyc[k];
      if (x < 0 || x >= n) throw ValidationError("cycle point " + std::to_string(x) + " out of range");
      if (tau[x] != -1) throw ValidationError("point " + std::to_string(x) + " appears in two cycles");
      tau[x] = cyc[(k + 1) % cyc.size()];
    }
  }
  for (int x = 0; x < n; ++x) {
    if (tau[x] == -1) throw ValidationError("point " + std::to_string(x) + " is not covered by a cycle");
  }
  if (nu.empty()) nu.assign(n, 1.0);
  return BaseSystem(std::move(tau), std::move(nu));
}

int BaseSystem::iterate(int x, int n) const {
  for (int k = 0; k < n; ++k) x = tau_[x];
  return x;
}

int BaseSystem::period(int x) const {
  int len = 1;
  for (int y = tau_[x]; y != x; y = tau_[y]) ++len;
  return len;
}

BaseSystem BaseSystem::inverse() const { return BaseSystem(tau_inv_, nu_); }

std::vector<Cycle> cycle_decomposition(const BaseSystem& b) {
  std::vector<Cycle> out;
  std::vector<bool> seen(b.size(), false);
  for (int x = 0; x < b.size(); ++x) {
    if (seen[x]) continue;
    Cycle c;
    for (int y = x; !seen[y]; y = b.tau(y)) {
      seen[y] = true;
      c.points.push_back(y);
      c.measure += b.nu(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Cocycle::Cocycle(BaseSystem base, std::vector<Matrix> generators, const Tolerances& tol)
    : base_(std::move(base)), gen_(std::move(generators)) {
  if (static_cast<int>(gen_.size()) != base_.size()) {
    throw ValidationError("generator table size differs from base size");
  }
  dim_ = static_cast<int>(gen_.front().rows());
  for (const auto& g : gen_) {
    if (g.rows() != dim_) throw ValidationError("generators have different dimensions");
    require_group_element(g, tol);
  }
}

Cocycle Cocycle::constant(BaseSystem base, const Matrix& g) {
  const int n = base.size();
  return Cocycle(std::move(base), std::vector<Matrix>(n, g));
}

std::vector<Matrix> Cocycle::orbit_factors(int x, int n) const {
  std::vector<Matrix> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    out.push_back(gen_[x]);
    x = base_.tau(x);
  }
  return out;
}

std::vector<Matrix> Cocycle::period_factors(int x) const { return orbit_factors(x, base_.period(x)); }

Matrix cocycle_step(const Cocycle& c, int n, int x) {
  if (n < 0) throw ValidationError("cocycle time must be non-negative");
  if (x < 0 || x >= c.base().size()) throw IndexError("base point out of range");
  Matrix out = Matrix::Identity(c.dim(), c.dim());
  for (int k = 0; k < n; ++k) {
    out = c.generator(x) * out;
    x = c.base().tau(x);
  }
  return out;
}

Cocycle perturb(const Cocycle& c, const std::vector<Matrix>& f) {
  if (static_cast<int>(f.size()) != c.base().size()) throw ValidationError("gauge table size differs from base size");
  std::vector<Matrix> gen(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x].rows() != c.dim()) throw ValidationError("gauge dimension differs from cocycle dimension");
    require_group_element(f[x]);
    gen[x] = f[x] * c.generator(static_cast<int>(x));
  }
  return Cocycle(c.base(), std::move(gen));
}

Cocycle inverse_cocycle(const Cocycle& c) {
  const auto& b = c.base();
  std::vector<Matrix> gen(b.size());
  for (int x = 0; x < b.size(); ++x) gen[x] = c.generator(b.tau_inv(x)).inverse();
  return Cocycle(b.inverse(), std::move(gen));
}

}  // namespace flaglyap
