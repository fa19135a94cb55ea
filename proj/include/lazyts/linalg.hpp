#pragma once

#include <Eigen/Dense>

namespace lazyts {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
// Arm matrices store one arm per row, contiguous.
using ArmMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense symmetric matrix of fixed dimension. Symmetry is checked on
// construction from arbitrary data and preserved by every mutator.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::Index dim);

  static SymMatrix zero(Eigen::Index dim) { return SymMatrix(dim); }
  static SymMatrix identity(Eigen::Index dim);
  static SymMatrix diagonal(const Vector& diag);
  // Throws InvalidInput if m is not square or not symmetric within tol::kSymmetry.
  static SymMatrix from_dense(const DenseMatrix& m);

  Eigen::Index dim() const { return m_.rows(); }
  const DenseMatrix& dense() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }

  // m += weight * a a^T
  SymMatrix& add_outer(const Vector& a, double weight = 1.0);

  friend bool operator==(const SymMatrix& x, const SymMatrix& y) { return x.m_ == y.m_; }

 private:
  DenseMatrix m_;
};

// Symmetric eigendecomposition with the derived quantities every module
// needs: spectrum bounds, pseudo-inverse solves and log-determinants.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const SymMatrix& m);

  // Ascending.
  const Vector& eigenvalues() const { return values_; }
  const DenseMatrix& eigenvectors() const { return vectors_; }

  // Smallest eigenvalue, reported as exactly 0 when its magnitude is below
  // tol::kRankDeficient times the spectral radius.
  double min_eigenvalue() const;
  double max_eigenvalue() const { return values_.size() ? values_(values_.size() - 1) : 0.0; }
  bool invertible(double relative_cutoff = 1e-12) const;

  // Minimum-norm least-squares solution, eigenvalues under
  // tol::kPinvCutoff * lambda_max are truncated.
  Vector pseudo_solve(const Vector& v) const;
  DenseMatrix pseudo_inverse() const;
  // log det(m / scale + I)
  double logdet_shifted(double scale) const;

 private:
  Vector values_;
  DenseMatrix vectors_;
};

double min_eigenvalue(const SymMatrix& m);
Vector solve_psd(const SymMatrix& m, const Vector& v);
double logdet_shifted(const SymMatrix& m, double scale);
SymMatrix rank_one_update(SymMatrix m, const Vector& a);

}  // namespace lazyts
