#include "flaglyap/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flaglyap/errors.hpp"
#include "flaglyap/matkit.hpp"

namespace flaglyap {

namespace {

void check_root_index(int i, int dim) {
  if (i < 1 || i > dim - 1) {
    throw IndexError("simple root index " + std::to_string(i) + " outside [1, " +
                     std::to_string(dim - 1) + "]");
  }
}

}  // namespace

double simple_root_value(int i, const CartanVector& h) {
  check_root_index(i, h.dim());
  return h[i - 1] - h[i];
}

WeightVector simple_root(int i, int dim) {
  check_root_index(i, dim);
  Vector c = Vector::Zero(dim);
  c[i - 1] = 1.0;
  c[i] = -1.0;
  return WeightVector(c);
}

WeightVector fundamental_weight(int i, int dim) {
  check_root_index(i, dim);
  Vector c = Vector::Zero(dim);
  c.head(i).setOnes();
  return WeightVector(c);
}

double weight_pairing(const WeightVector& a, const WeightVector& b) {
  if (a.dim() != b.dim()) throw TypeMismatch("weight dimensions differ");
  const Vector pa = a.coefficients().array() - a.coefficients().mean();
  const Vector pb = b.coefficients().array() - b.coefficients().mean();
  return pa.dot(pb);
}

ThetaSet theta_of(const CartanVector& h, double eps) {
  if (!(eps > 0.0)) throw ValidationError("gap tolerance must be positive");
  std::vector<int> idx;
  for (int i = 1; i < h.dim(); ++i) {
    const double gap = h[i - 1] - h[i];
    if (gap < -eps) throw UnsortedInput("Cartan vector is not in the closed chamber");
    if (std::abs(gap) <= eps) idx.push_back(i);
  }
  return ThetaSet(h.dim(), idx);
}

double default_theta_eps(const CartanVector& h, const Tolerances& tol) {
  double largest = 0.0;
  for (int i = 1; i < h.dim(); ++i) largest = std::max(largest, std::abs(h[i - 1] - h[i]));
  // Rounding leaves ~1e-16 gaps in a zero spectrum, hence the absolute floor.
  return std::max(tol.theta_relative * largest, tol.theta_floor);
}

std::vector<WeightVector> weights_outside(const ThetaSet& theta) {
  std::vector<WeightVector> out;
  for (int i : theta.complement()) out.push_back(fundamental_weight(i, theta.dim()));
  return out;
}

std::vector<int> weight_support(const WeightVector& omega, double tol) {
  const Vector m = omega.fundamental_coordinates();
  std::vector<int> out;
  for (int i = 0; i < m.size(); ++i) {
    if (std::abs(m[i]) > tol) out.push_back(i + 1);
  }
  return out;
}

bool is_admissible(const WeightVector& omega, const ThetaSet& theta, double tol) {
  if (omega.dim() != theta.dim()) return false;
  for (int i : weight_support(omega, tol)) {
    if (theta.contains(i)) return false;
  }
  return true;
}

void require_admissible(const WeightVector& omega, const ThetaSet& theta) {
  if (!is_admissible(omega, theta)) {
    throw WeightNotAdmissible("weight is not in the span of the fundamental weights outside " +
                              theta.to_string());
  }
}

Matrix cartan_subspace_basis(const ThetaSet& theta) {
  const int d = theta.dim();
  const auto& idx = theta.indices();
  Matrix basis = Matrix::Zero(d, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    basis(idx[k] - 1, k) = 1.0;
    basis(idx[k], k) = -1.0;
  }
  return basis;
}

CartanVector a_projection(const Matrix& z) {
  require_algebra_element(z);
  return CartanVector::traceless(z.diagonal());
}

Matrix ad_action(const Matrix& g, const Matrix& z) {
  check_dimension(g);
  if (z.rows() != g.rows() || z.cols() != g.cols()) throw TypeMismatch("shape mismatch");
  Eigen::PartialPivLU<Matrix> lu(g.transpose());
  if (std::abs(lu.determinant()) <= default_tolerances().pivot) throw SingularInput("singular conjugator");
  // (g Z) g^{-1} = ((g^{-T}) (g Z)^T)^T
  const Matrix gz = g * z;
  return lu.solve(gz.transpose()).transpose();
}

CartanVector weyl_apply(std::span<const int> w, const CartanVector& h) {
  const int d = h.dim();
  if (static_cast<int>(w.size()) != d) throw MalformedPermutation("permutation has wrong length");
  std::vector<bool> seen(d, false);
  for (int v : w) {
    if (v < 0 || v >= d || seen[v]) throw MalformedPermutation("not a permutation");
    seen[v] = true;
  }
  Vector out(d);
  // (wH)_{w(j)} = H_j
  for (int j = 0; j < d; ++j) out[w[j]] = h[j];
  return CartanVector::traceless(out);
}

std::vector<int> chamber_permutation(const CartanVector& h) {
  const int d = h.dim();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return h[a] > h[b]; });
  // order[k] is the source index landing at position k, so w(order[k]) = k.
  std::vector<int> w(d);
  for (int k = 0; k < d; ++k) w[order[k]] = k;
  return w;
}

}  // namespace flaglyap
