#include "musa/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace musa {

namespace {

constexpr double kOffDiagonalTolerance = 1e-12;  // relative to ||m||_F
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Largest-magnitude entry positive, ties resolved toward the lowest index.
void fix_column_signs(Matrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (v(pivot, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

EigenDecomposition symmetric_eigendecomposition(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw PreconditionError("eigendecomposition requires a square matrix, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  const Index p = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw PreconditionError("matrix is not symmetric (max asymmetry " +
                            std::to_string(asym) + ")");

  Matrix a = 0.5 * (m + m.transpose());
  Matrix v = Matrix::Identity(p, p);
  const double norm = a.norm();
  const double stop = kOffDiagonalTolerance * std::max(norm, 1e-300);

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > stop) {
    if (sweep++ >= kMaxSweeps)
      throw ConvergenceError(
          "jacobi eigendecomposition did not converge in " +
              std::to_string(kMaxSweeps) + " sweeps (off-diagonal residual " +
              std::to_string(off) + ")",
          off);
    for (Index q = 1; q < p; ++q) {
      for (Index r = 0; r < q; ++r) {
        const double apq = a(r, q);
        if (apq == 0.0) continue;
        const double app = a(r, r);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        // smaller-magnitude root of t^2 + 2*theta*t - 1 = 0
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Index k = 0; k < p; ++k) {
          const double akp = a(k, r);
          const double akq = a(k, q);
          a(k, r) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < p; ++k) {
          const double apk = a(r, k);
          const double aqk = a(q, k);
          a(r, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Index k = 0; k < p; ++k) {
          const double vkp = v(k, r);
          const double vkq = v(k, q);
          v(k, r) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<Index> order(static_cast<size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition result;
  result.eigenvalues.resize(p);
  result.eigenvectors.resize(p, p);
  for (Index j = 0; j < p; ++j) {
    result.eigenvalues[j] = a(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]);
    result.eigenvectors.col(j) = v.col(order[static_cast<size_t>(j)]);
  }
  fix_column_signs(result.eigenvectors);
  return result;
}

Matrix symmetric_sqrt(const Matrix& m) {
  const EigenDecomposition eig = symmetric_eigendecomposition(m);
  const double lambda_max = eig.eigenvalues.size() > 0 ? eig.eigenvalues[0] : 0.0;
  const double floor = -1e-10 * std::max(1.0, lambda_max);
  Vector roots(eig.eigenvalues.size());
  for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
    const double lambda = eig.eigenvalues[j];
    if (lambda < floor)
      throw NumericError("matrix is not positive semidefinite (eigenvalue " +
                         std::to_string(lambda) + ")");
    roots[j] = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.transpose();
}

}  // namespace musa
