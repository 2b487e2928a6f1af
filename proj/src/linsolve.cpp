#include "vmsdg/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vmsdg {

void apply_constraints(LinearSystem& system) {
  if (system.constraints_applied) return;
  const auto n = system.matrix.rows();
  if (system.matrix.cols() != n || system.rhs.size() != n)
    throw std::invalid_argument("apply_constraints: inconsistent system dimensions");
  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  for (const auto& c : system.constraints) {
    if (c.dof >= static_cast<std::size_t>(n))
      throw std::invalid_argument("apply_constraints: constrained dof out of range");
    fixed[c.dof] = 1;
  }
  for (const auto& c : system.constraints) {
    const auto j = static_cast<Eigen::Index>(c.dof);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!fixed[static_cast<std::size_t>(i)]) system.rhs[i] -= system.matrix(i, j) * c.value;
    }
  }
  for (const auto& c : system.constraints) {
    const auto j = static_cast<Eigen::Index>(c.dof);
    system.matrix.row(j).setZero();
    system.matrix.col(j).setZero();
    system.matrix(j, j) = 1.0;
    system.rhs[j] = c.value;
  }
  system.constraints_applied = true;
}

LUFactorization::LUFactorization(const DenseMatrix& a) : lu_(a) {
  const auto n = lu_.rows();
  if (lu_.cols() != n) throw std::invalid_argument("LUFactorization: matrix must be square");
  perm_.resize(static_cast<std::size_t>(n));
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  std::vector<double> row_scale(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) row_scale[i] = lu_.row(i).cwiseAbs().maxCoeff();

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(lu_(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    }
    const double scale = row_scale[perm_[piv]];
    if (!(best > 1e-14 * scale) || scale == 0.0) throw SingularMatrixError(static_cast<std::size_t>(k));
    if (piv != k) {
      lu_.row(k).swap(lu_.row(piv));
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double m = lu_(i, k) * inv;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (Eigen::Index j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

Eigen::VectorXd LUFactorization::solve(const Eigen::VectorXd& b) const {
  const auto n = lu_.rows();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b[static_cast<Eigen::Index>(perm_[i])];
    for (Eigen::Index j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (Eigen::Index j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Eigen::VectorXd LUFactorization::solve_transpose(const Eigen::VectorXd& b) const {
  // P A = L U, so A^T = U^T L^T P and A^T x = b solves U^T z = b, L^T w = z, x = P^T w.
  const auto n = lu_.rows();
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b[i];
    for (Eigen::Index j = 0; j < i; ++j) s -= lu_(j, i) * z[j];
    z[i] = s / lu_(i, i);
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = z[i];
    for (Eigen::Index j = i + 1; j < n; ++j) s -= lu_(j, i) * z[j];
    z[i] = s;
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[static_cast<Eigen::Index>(perm_[i])] = z[i];
  return x;
}

double condition_estimate_1norm(const DenseMatrix& a, const LUFactorization& lu) {
  const auto n = a.rows();
  if (n == 0) return 0.0;
  const double norm_a = a.cwiseAbs().colwise().sum().maxCoeff();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int it = 0; it < 5; ++it) {
    const Eigen::VectorXd y = lu.solve(x);
    const double ynorm = y.cwiseAbs().sum();
    if (it > 0 && ynorm <= est) break;
    est = ynorm;
    Eigen::VectorXd xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const Eigen::VectorXd z = lu.solve_transpose(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x)) break;
    x.setZero();
    x[j] = 1.0;
  }
  // Higham's alternating test vector guards against the iteration stalling.
  if (n > 1) {
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i)
      b[i] = (i % 2 ? -1.0 : 1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(n - 1));
    est = std::max(est, 2.0 * lu.solve(b).cwiseAbs().sum() / (3.0 * static_cast<double>(n)));
  }
  return est * norm_a;
}

Solution solve(LinearSystem system) {
  apply_constraints(system);
  const LUFactorization lu(system.matrix);
  Solution out;
  out.x = lu.solve(system.rhs);
  out.residual_norm = (system.matrix * out.x - system.rhs).cwiseAbs().maxCoeff();
  out.condition_estimate = condition_estimate_1norm(system.matrix, lu);
  return out;
}

}  // namespace vmsdg
