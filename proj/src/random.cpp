#include "flaglyap/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flaglyap {

Matrix random_gaussian(int d, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = normal(rng);
  return m;
}

Matrix random_sl(int d, Rng& rng) {
  while (true) {
    Matrix m = random_gaussian(d, rng);
    double det = m.determinant();
    if (std::abs(det) < 1e-3) continue;
    if (det < 0) {
      m.row(0) *= -1.0;
      det = -det;
    }
    return m / std::pow(det, 1.0 / d);
  }
}

Matrix random_traceless(int d, Rng& rng, double scale) {
  Matrix m = random_gaussian(d, rng, scale);
  m.diagonal().array() -= m.trace() / d;
  return m;
}

Matrix random_antisymmetric(int d, Rng& rng, double scale) {
  const Matrix m = random_gaussian(d, rng, scale);
  return m - m.transpose();
}

Matrix random_special_orthogonal(int d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1.0;
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Matrix random_stabilizer(const ThetaSet& theta, Rng& rng) {
  const int d = theta.dim();
  Matrix m = Matrix::Zero(d, d);
  std::uniform_int_distribution<int> coin(0, 1);
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || !theta.contains(i)) {
      const int len = i - start;
      auto block = m.block(start, start, len, len);
      block = len == 1 ? Matrix(Matrix::Identity(1, 1)) : random_special_orthogonal(len, rng);
      if (coin(rng)) block *= -1.0;
      start = i;
    }
  }
  if (m.determinant() < 0) m.col(0) *= -1.0;
  return m;
}

BaseSystem random_base(int n, int max_cycle, Rng& rng) {
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<int> tau(n);
  std::vector<double> nu(n);
  std::uniform_int_distribution<int> len_dist(1, std::max(1, max_cycle));
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  int pos = 0;
  while (pos < n) {
    const int len = std::min(len_dist(rng), n - pos);
    const double w = weight(rng);
    for (int k = 0; k < len; ++k) {
      tau[pts[pos + k]] = pts[pos + (k + 1) % len];
      nu[pts[pos + k]] = w;
    }
    pos += len;
  }
  return BaseSystem(std::move(tau), std::move(nu));
}

}  // namespace flaglyap
