#include "flaglyap/matkit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "flaglyap/errors.hpp"

namespace flaglyap {

namespace {

Vector sorted_desc(Vector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

// Rows of a triangular product kept as diag(exp(scale)) * rows, rows unit norm.
struct ScaledRows {
  Vector scale;
  Matrix rows;
};

// Singular values of diag(exp(s)) * B by repeated LQ flips. Each flip moves
// the scaling to the other side; off-diagonal coupling decays by the gap of
// the scales, so well-separated singular values are resolved to relative
// precision. Any remaining coupled blocks are finished with a dense SVD.
Vector graded_log_singular_values(ScaledRows t) {
  const int d = static_cast<int>(t.scale.size());
  constexpr int kMaxFlips = 200;
  constexpr double kCoupling = 1e-9;

  auto max_coupling = [&](const Matrix& b) {
    double c = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) c = std::max(c, std::abs(b(i, j)));
    return c;
  };

  for (int flip = 0; flip < kMaxFlips; ++flip) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return t.scale[a] > t.scale[b]; });
    Matrix b(d, d);
    Vector s(d);
    for (int i = 0; i < d; ++i) {
      b.row(i) = t.rows.row(perm[i]);
      s[i] = t.scale[perm[i]];
    }
    if (flip > 0 && max_coupling(b) <= kCoupling && std::is_sorted(perm.begin(), perm.end())) {
      t.rows = b;
      t.scale = s;
      break;
    }
    // b = L * Q; sv(diag(e^s) L) = sv(L^T diag(e^s)).
    Eigen::HouseholderQR<Matrix> qr(b.transpose());
    const Matrix lt = qr.matrixQR().triangularView<Eigen::Upper>();  // = L^T
    Matrix next = Matrix::Zero(d, d);
    Vector next_scale(d);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) next(i, j) = lt(i, j) * std::exp(s[j] - s[i]);
      const double norm = next.row(i).norm();
      if (norm == 0.0) throw SingularInput("singular factor in product");
      next.row(i) /= norm;
      next_scale[i] = s[i] + std::log(norm);
    }
    t.rows = next;
    t.scale = next_scale;
  }

  Vector out(d);
  int start = 0;
  while (start < d) {
    int end = start;
    // Extend the block while rows above couple to columns beyond it.
    while (end + 1 < d) {
      double c = 0.0;
      for (int r = start; r <= end; ++r)
        for (int col = end + 1; col < d; ++col) c = std::max(c, std::abs(t.rows(r, col)));
      if (c <= kCoupling) break;
      ++end;
    }
    const int len = end - start + 1;
    const double top = t.scale.segment(start, len).maxCoeff();
    Matrix block = t.rows.block(start, start, len, len);
    for (int r = 0; r < len; ++r) block.row(r) *= std::exp(t.scale[start + r] - top);
    Eigen::JacobiSVD<Matrix> svd(block);
    for (int r = 0; r < len; ++r) out[start + r] = top + std::log(svd.singularValues()[r]);
    start = end + 1;
  }
  return sorted_desc(out);
}

}  // namespace

void check_dimension(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix must be square");
  if (m.rows() < kMinDim || m.rows() > kMaxDim) {
    throw ValidationError("matrix dimension " + std::to_string(m.rows()) + " outside [2, 12]");
  }
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
}

bool is_group_element(const Matrix& g, const Tolerances& tol) {
  if (g.rows() != g.cols() || g.rows() < kMinDim || g.rows() > kMaxDim) return false;
  return g.allFinite() && std::abs(g.determinant() - 1.0) <= tol.det;
}

bool is_algebra_element(const Matrix& z, const Tolerances& tol) {
  if (z.rows() != z.cols() || z.rows() < kMinDim || z.rows() > kMaxDim) return false;
  return z.allFinite() && std::abs(z.trace()) <= tol.trace;
}

void require_group_element(const Matrix& g, const Tolerances& tol) {
  check_dimension(g);
  const double det = g.determinant();
  if (std::abs(det - 1.0) > tol.det) {
    throw DeterminantError("expected unit determinant, got " + std::to_string(det));
  }
}

void require_algebra_element(const Matrix& z, const Tolerances& tol) {
  check_dimension(z);
  if (std::abs(z.trace()) > tol.trace) {
    throw ValidationError("expected traceless matrix, trace " + std::to_string(z.trace()));
  }
}

IwasawaFactors iwasawa(const Matrix& g, const Tolerances& tol) {
  check_dimension(g);
  const int d = static_cast<int>(g.rows());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) {
      r.row(i) *= -1.0;
      q.col(i) *= -1.0;
    }
    if (r(i, i) <= tol.pivot) throw SingularInput("triangular pivot below threshold");
  }
  Vector logs(d);
  Matrix n = Matrix::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    logs[i] = std::log(r(i, i));
    for (int j = i + 1; j < d; ++j) n(i, j) = r(i, j) / r(i, i);
  }
  return {std::move(q), CartanVector::traceless(logs), std::move(n)};
}

PolarFactors polar_chamber(const Matrix& g) {
  check_dimension(g);
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw DecompositionFailure("singular value decomposition failed");
  Matrix u = svd.matrixU();
  Matrix v = svd.matrixV();
  const Vector& sigma = svd.singularValues();
  if (sigma.minCoeff() <= 0.0) throw DecompositionFailure("zero singular value");
  // det g > 0 forces det u = det v; flip a column pair when both are -1.
  if (u.determinant() < 0.0) {
    u.col(u.cols() - 1) *= -1.0;
    v.col(v.cols() - 1) *= -1.0;
  }
  return {std::move(u), CartanVector::traceless(sigma.array().log().matrix()), v.transpose()};
}

CartanVector eig_log_moduli(const Matrix& g) {
  check_dimension(g);
  Eigen::EigenSolver<Matrix> es(g, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw DecompositionFailure("eigenvalue iteration failed");
  Vector logs = es.eigenvalues().cwiseAbs().array().log().matrix();
  return CartanVector::traceless(sorted_desc(logs));
}

CartanVector product_eig_log_moduli(std::span<const Matrix> factors) {
  if (factors.empty()) throw ValidationError("empty product");
  const int d = static_cast<int>(factors.front().rows());
  for (const auto& f : factors) check_dimension(f);

  double log_det = 0.0;
  for (const auto& f : factors) log_det += std::log(std::abs(f.determinant()));

  auto scaled_product = [&](auto&& transform) {
    Matrix p = transform(factors.front());
    double scale = 0.0;
    for (std::size_t k = 0;; ++k) {
      const double m = p.cwiseAbs().maxCoeff();
      if (m == 0.0) throw SingularInput("product vanished");
      p /= m;
      scale += std::log(m);
      if (k + 1 == factors.size()) break;
      p = transform(factors[k + 1]) * p;
    }
    return std::pair{p, scale};
  };

  auto log_radius = [](const Matrix& p) {
    Eigen::EigenSolver<Matrix> es(p, false);
    if (es.info() != Eigen::Success) throw DecompositionFailure("eigenvalue iteration failed");
    return std::log(es.eigenvalues().cwiseAbs().maxCoeff());
  };

  Vector logs(d);
  if (d <= 8) {
    double prev = 0.0;
    for (int j = 1; j < d; ++j) {
      auto [p, scale] = scaled_product([j](const Matrix& f) { return compound(f, j); });
      const double top = log_radius(p) + scale;
      logs[j - 1] = top - prev;
      prev = top;
    }
    logs[d - 1] = log_det - prev;
  } else {
    auto [p, scale] = scaled_product([](const Matrix& f) { return f; });
    Eigen::EigenSolver<Matrix> es(p, false);
    if (es.info() != Eigen::Success) throw DecompositionFailure("eigenvalue iteration failed");
    logs = (es.eigenvalues().cwiseAbs().array().log() + scale).matrix();
  }
  return CartanVector::traceless(sorted_desc(logs));
}

CartanVector product_log_singular_values(std::span<const Matrix> factors) {
  if (factors.empty()) throw ValidationError("empty product");
  const int d = static_cast<int>(factors.front().rows());
  Matrix q = Matrix::Identity(d, d);
  ScaledRows t{Vector::Zero(d), Matrix::Identity(d, d)};
  for (const auto& g : factors) {
    check_dimension(g);
    Eigen::HouseholderQR<Matrix> qr(g * q);
    q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // rows of r * diag(e^s) * B, each normalized by its own dominant scale.
    Matrix rows = Matrix::Zero(d, d);
    Vector scale(d);
    for (int i = 0; i < d; ++i) {
      double top = -std::numeric_limits<double>::infinity();
      for (int j = i; j < d; ++j) {
        if (r(i, j) != 0.0) top = std::max(top, t.scale[j]);
      }
      for (int j = i; j < d; ++j) rows.row(i) += r(i, j) * std::exp(t.scale[j] - top) * t.rows.row(j);
      const double norm = rows.row(i).norm();
      if (norm == 0.0) throw SingularInput("singular factor in product");
      rows.row(i) /= norm;
      scale[i] = top + std::log(norm);
    }
    t = {scale, rows};
  }
  return CartanVector::traceless(graded_log_singular_values(std::move(t)));
}

Matrix mat_exp(const Matrix& z) {
  if (z.rows() != z.cols()) throw ValidationError("matrix must be square");
  if (z.isZero(0.0)) return Matrix::Identity(z.rows(), z.cols());
  return z.exp();
}

double minor(const Matrix& g, std::span<const int> rows, std::span<const int> cols) {
  const auto n = static_cast<int>(g.rows());
  if (rows.empty() || rows.size() != cols.size()) throw IndexError("index sets must be non-empty and of equal size");
  auto check = [n](std::span<const int> idx) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= n) throw IndexError("index out of range");
      if (k > 0 && idx[k] <= idx[k - 1]) throw IndexError("indices must be strictly increasing");
    }
  };
  check(rows);
  check(cols);
  const auto m = static_cast<int>(rows.size());
  Matrix sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = g(rows[i], cols[j]);
  return sub.determinant();
}

std::vector<std::vector<int>> index_subsets(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(j);
  std::iota(cur.begin(), cur.end(), 0);
  if (j <= 0 || j > n) return out;
  while (true) {
    out.push_back(cur);
    int i = j - 1;
    while (i >= 0 && cur[i] == n - j + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int k = i + 1; k < j; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

Matrix compound(const Matrix& g, int j) {
  const auto subsets = index_subsets(static_cast<int>(g.rows()), j);
  const auto m = static_cast<Eigen::Index>(subsets.size());
  Matrix c(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) c(a, b) = minor(g, subsets[a], subsets[b]);
  return c;
}

bool is_positive_definite(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw ValidationError("matrix must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol.symmetry) {
    throw AsymmetricInput("matrix is not symmetric");
  }
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    if (m.topLeftCorner(k, k).determinant() <= tol.pd_minor) return false;
  }
  return true;
}

double subspace_distance(const Matrix& u1, const Matrix& u2) {
  if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) throw TypeMismatch("subspace shapes differ");
  const Matrix residual = u1 - u2 * (u2.transpose() * u1);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return std::min(1.0, svd.singularValues()[0]);
}

}  // namespace flaglyap
