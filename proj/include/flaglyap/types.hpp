#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace flaglyap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 12;

/// Element of the diagonal traceless subalgebra, stored as its diagonal.
class CartanVector {
 public:
  CartanVector() = default;
  /// Throws ValidationError unless the entries sum to zero within 1e-9.
  explicit CartanVector(Vector values);

  /// Projects onto the traceless subspace (subtracts the mean).
  static CartanVector traceless(const Vector& values);
  static CartanVector zero(int dim);

  int dim() const { return static_cast<int>(values_.size()); }
  const Vector& values() const { return values_; }
  double operator[](int i) const { return values_[i]; }

  CartanVector operator+(const CartanVector& o) const;
  CartanVector operator-(const CartanVector& o) const;
  CartanVector operator*(double s) const;

  bool is_sorted_nonincreasing(double eps = 0.0) const;

 private:
  Vector values_;
};

/// Linear functional on the Cartan subalgebra, omega(H) = sum_i c_i H_i.
/// Coefficients are normalized so that the last one is zero.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(const Vector& coefficients);

  /// Builds sum_i m_i * omega_i from coordinates in the fundamental-weight basis.
  static WeightVector from_fundamental(const Vector& coords);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  const Vector& coefficients() const { return coeffs_; }
  double operator()(const CartanVector& h) const;

  /// Coordinates m_1..m_{d-1} with omega = sum m_i omega_i (m_i = c_i - c_{i+1}).
  Vector fundamental_coordinates() const;

 private:
  Vector coeffs_;
};

/// Subset of simple-root indices {1, ..., d-1}; index i denotes lambda_i - lambda_{i+1}.
class ThetaSet {
 public:
  ThetaSet() = default;
  /// Throws IndexError on out-of-range or duplicate indices.
  ThetaSet(int dim, std::vector<int> indices);

  static ThetaSet empty(int dim) { return ThetaSet(dim, {}); }
  static ThetaSet full(int dim);
  /// Sigma minus the given indices.
  static ThetaSet all_but(int dim, const std::vector<int>& removed);

  int dim() const { return dim_; }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  bool is_subset_of(const ThetaSet& other) const;
  /// Simple roots not in the set, i.e. the dimensions of the subspaces in the flag.
  std::vector<int> complement() const;
  /// Image under i -> d - i.
  ThetaSet dual() const;

  std::string to_string() const;
  bool operator==(const ThetaSet& o) const = default;

 private:
  int dim_ = 0;
  std::vector<int> indices_;
};

}  // namespace flaglyap
