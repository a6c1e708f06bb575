#pragma once

// Dense kernels for small matrices in SL(d, R) and sl(d, R).

#include <span>
#include <vector>

#include "flaglyap/tolerances.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

/// g = k * exp(diag(a)) * n with k special orthogonal and n unit upper triangular.
struct IwasawaFactors {
  Matrix k;
  CartanVector a;
  Matrix n;
};

/// g = k1 * exp(diag(h_plus)) * k2 with h_plus non-increasing.
struct PolarFactors {
  Matrix k1;
  CartanVector h_plus;
  Matrix k2;
};

void check_dimension(const Matrix& m);
bool is_group_element(const Matrix& g, const Tolerances& tol = default_tolerances());
bool is_algebra_element(const Matrix& z, const Tolerances& tol = default_tolerances());
/// Throws DeterminantError unless g is square, in range and |det g - 1| <= tol.det.
void require_group_element(const Matrix& g, const Tolerances& tol = default_tolerances());
/// Throws ValidationError unless z is square, in range and traceless.
void require_algebra_element(const Matrix& z, const Tolerances& tol = default_tolerances());

/// QR with Householder reflections, signs normalized so the triangular factor
/// has a positive diagonal. Throws SingularInput on a pivot <= tol.pivot.
IwasawaFactors iwasawa(const Matrix& g, const Tolerances& tol = default_tolerances());

/// Singular value decomposition folded into SO(d) x closed chamber x SO(d).
PolarFactors polar_chamber(const Matrix& g);

/// Sorted log-moduli of the eigenvalues of g, projected to sum zero.
CartanVector eig_log_moduli(const Matrix& g);

/// Sorted log-moduli of the eigenvalues of factors.back() * ... * factors.front().
///
/// The product is never formed directly: the j largest log-moduli are summed
/// as the log spectral radius of the j-th compound of the product, which is
/// itself accumulated factor by factor with rescaling. This keeps the small
/// eigenvalues of long products accurate.
CartanVector product_eig_log_moduli(std::span<const Matrix> factors);

/// Sorted log singular values of factors.back() * ... * factors.front(),
/// accumulated in scaled triangular form so long products neither overflow
/// nor lose their small singular values.
CartanVector product_log_singular_values(std::span<const Matrix> factors);

/// Scaling and squaring with a Pade approximant; exp(0) is exactly I.
Matrix mat_exp(const Matrix& z);

/// Determinant of the submatrix on the given strictly increasing index sets.
double minor(const Matrix& g, std::span<const int> rows, std::span<const int> cols);

/// j-th compound: all j x j minors, index sets in lexicographic order.
Matrix compound(const Matrix& g, int j);

/// All strictly increasing subsets of {0..n-1} of size j, lexicographic.
std::vector<std::vector<int>> index_subsets(int n, int j);

bool is_positive_definite(const Matrix& m, const Tolerances& tol = default_tolerances());

/// sin of the largest principal angle between the column spans of two
/// orthonormal blocks of equal width.
double subspace_distance(const Matrix& u1, const Matrix& u2);

}  // namespace flaglyap
