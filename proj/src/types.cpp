#include "flaglyap/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flaglyap/errors.hpp"
#include "flaglyap/tolerances.hpp"

namespace flaglyap {

CartanVector::CartanVector(Vector values) : values_(std::move(values)) {
  if (std::abs(values_.sum()) > default_tolerances().trace) {
    throw ValidationError("Cartan vector entries must sum to zero");
  }
}

CartanVector CartanVector::traceless(const Vector& values) {
  CartanVector h;
  h.values_ = values.array() - values.mean();
  return h;
}

CartanVector CartanVector::zero(int dim) {
  CartanVector h;
  h.values_ = Vector::Zero(dim);
  return h;
}

CartanVector CartanVector::operator+(const CartanVector& o) const {
  CartanVector h;
  h.values_ = values_ + o.values_;
  return h;
}

CartanVector CartanVector::operator-(const CartanVector& o) const {
  CartanVector h;
  h.values_ = values_ - o.values_;
  return h;
}

CartanVector CartanVector::operator*(double s) const {
  CartanVector h;
  h.values_ = values_ * s;
  return h;
}

bool CartanVector::is_sorted_nonincreasing(double eps) const {
  for (int i = 0; i + 1 < dim(); ++i) {
    if (values_[i + 1] - values_[i] > eps) return false;
  }
  return true;
}

WeightVector::WeightVector(const Vector& coefficients) {
  if (coefficients.size() < kMinDim) throw ValidationError("weight dimension must be at least 2");
  coeffs_ = coefficients.array() - coefficients[coefficients.size() - 1];
}

WeightVector WeightVector::from_fundamental(const Vector& coords) {
  const int d = static_cast<int>(coords.size()) + 1;
  Vector c = Vector::Zero(d);
  // omega_i has coefficient 1 on lambda_1..lambda_i.
  for (int i = d - 2; i >= 0; --i) c[i] = c[i + 1] + coords[i];
  return WeightVector(c);
}

double WeightVector::operator()(const CartanVector& h) const {
  if (h.dim() != dim()) throw TypeMismatch("weight and Cartan vector dimensions differ");
  return coeffs_.dot(h.values());
}

Vector WeightVector::fundamental_coordinates() const {
  const int d = dim();
  Vector m(d - 1);
  for (int i = 0; i < d - 1; ++i) m[i] = coeffs_[i] - coeffs_[i + 1];
  return m;
}

ThetaSet::ThetaSet(int dim, std::vector<int> indices) : dim_(dim), indices_(std::move(indices)) {
  if (dim < kMinDim || dim > kMaxDim) throw IndexError("flag dimension out of range");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 1 || indices_[k] > dim - 1) {
      throw IndexError("simple root index " + std::to_string(indices_[k]) + " out of range");
    }
    if (k > 0 && indices_[k] == indices_[k - 1]) throw IndexError("duplicate simple root index");
  }
}

ThetaSet ThetaSet::full(int dim) {
  std::vector<int> all(dim - 1);
  for (int i = 0; i < dim - 1; ++i) all[i] = i + 1;
  return ThetaSet(dim, all);
}

ThetaSet ThetaSet::all_but(int dim, const std::vector<int>& removed) {
  std::vector<int> keep;
  for (int i = 1; i < dim; ++i) {
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) keep.push_back(i);
  }
  return ThetaSet(dim, keep);
}

bool ThetaSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool ThetaSet::is_subset_of(const ThetaSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

std::vector<int> ThetaSet::complement() const {
  std::vector<int> out;
  for (int i = 1; i < dim_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

ThetaSet ThetaSet::dual() const {
  std::vector<int> out;
  out.reserve(indices_.size());
  for (int i : indices_) out.push_back(dim_ - i);
  return ThetaSet(dim_, out);
}

std::string ThetaSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < indices_.size(); ++k) os << (k ? "," : "") << indices_[k];
  os << '}';
  return os.str();
}

}  // namespace flaglyap
