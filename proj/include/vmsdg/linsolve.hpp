#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vmsdg {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Constraint {
  std::size_t dof = 0;
  double value = 0.0;
};

/// Dense system A x = b with strongly imposed dof values.
struct LinearSystem {
  DenseMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<Constraint> constraints;
  bool constraints_applied = false;
};

/// Replaces constrained rows and columns by identity, moving the eliminated
/// column contributions to the right-hand side. Idempotent.
void apply_constraints(LinearSystem& system);

struct Solution {
  Eigen::VectorXd x;
  /// ||A x - b||_inf recomputed against the system that was factorized.
  double residual_norm = 0.0;
  /// Estimate of ||A||_1 ||A^{-1}||_1.
  double condition_estimate = 0.0;
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(std::size_t row)
      : std::runtime_error("singular matrix: no acceptable pivot in row " + std::to_string(row)),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Dense LU factorization with partial pivoting.
class LUFactorization {
 public:
  explicit LUFactorization(const DenseMatrix& a);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::VectorXd solve_transpose(const Eigen::VectorXd& b) const;
  std::size_t size() const { return static_cast<std::size_t>(lu_.rows()); }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Hager-Higham estimate of ||A^{-1}||_1 times ||A||_1.
double condition_estimate_1norm(const DenseMatrix& a, const LUFactorization& lu);

/// Applies constraints (if not yet applied), factorizes and solves.
Solution solve(LinearSystem system);

}  // namespace vmsdg
