#include "lazyts/linalg.hpp"

#include <cmath>

#include "lazyts/errors.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

SymMatrix::SymMatrix(Eigen::Index dim) {
  if (dim <= 0) throw InvalidInput("SymMatrix: dimension must be positive");
  m_ = DenseMatrix::Zero(dim, dim);
}

SymMatrix SymMatrix::identity(Eigen::Index dim) {
  SymMatrix s(dim);
  s.m_.setIdentity();
  return s;
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  SymMatrix s(diag.size());
  s.m_.diagonal() = diag;
  return s;
}

SymMatrix SymMatrix::from_dense(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("SymMatrix: matrix is not square");
  if (!m.allFinite()) throw InvalidInput("SymMatrix: non-finite entry");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol::kSymmetry) {
    throw InvalidInput("SymMatrix: matrix is not symmetric");
  }
  SymMatrix s(m.rows());
  s.m_ = 0.5 * (m + m.transpose());
  return s;
}

SymMatrix& SymMatrix::add_outer(const Vector& a, double weight) {
  if (a.size() != dim()) throw InvalidInput("SymMatrix::add_outer: dimension mismatch");
  if (!a.allFinite() || !std::isfinite(weight)) {
    throw InvalidInput("SymMatrix::add_outer: non-finite input");
  }
  // Written element-wise so that m stays exactly symmetric.
  const Eigen::Index n = dim();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = m_(i, j) + weight * a(i) * a(j);
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
  return *this;
}

SpectralDecomposition::SpectralDecomposition(const SymMatrix& m) {
  if (!m.dense().allFinite()) throw InvalidInput("eigendecomposition: non-finite entry");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eigendecomposition failed to converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

double SpectralDecomposition::min_eigenvalue() const {
  const double lo = values_(0);
  const double radius = std::max(std::abs(lo), std::abs(max_eigenvalue()));
  if (std::abs(lo) <= tol::kRankDeficient * radius) return 0.0;
  return lo;
}

bool SpectralDecomposition::invertible(double relative_cutoff) const {
  const double hi = max_eigenvalue();
  return hi > 0.0 && values_(0) > relative_cutoff * hi;
}

Vector SpectralDecomposition::pseudo_solve(const Vector& v) const {
  if (v.size() != values_.size()) throw InvalidInput("solve_psd: dimension mismatch");
  if (!v.allFinite()) throw InvalidInput("solve_psd: non-finite right-hand side");
  const double cutoff = tol::kPinvCutoff * max_eigenvalue();
  Vector coeffs = vectors_.transpose() * v;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) = (values_(i) > cutoff && values_(i) > 0.0) ? coeffs(i) / values_(i) : 0.0;
  }
  return vectors_ * coeffs;
}

DenseMatrix SpectralDecomposition::pseudo_inverse() const {
  const double cutoff = tol::kPinvCutoff * max_eigenvalue();
  Vector inv(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    inv(i) = (values_(i) > cutoff && values_(i) > 0.0) ? 1.0 / values_(i) : 0.0;
  }
  return vectors_ * inv.asDiagonal() * vectors_.transpose();
}

double SpectralDecomposition::logdet_shifted(double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidInput("logdet_shifted: scale must be positive");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    // Round-off can leave PSD eigenvalues slightly negative.
    sum += std::log1p(std::max(values_(i), 0.0) / scale);
  }
  return sum;
}

double min_eigenvalue(const SymMatrix& m) { return SpectralDecomposition(m).min_eigenvalue(); }

Vector solve_psd(const SymMatrix& m, const Vector& v) {
  return SpectralDecomposition(m).pseudo_solve(v);
}

double logdet_shifted(const SymMatrix& m, double scale) {
  if (!(scale > 0.0)) throw InvalidInput("logdet_shifted: scale must be positive");
  return SpectralDecomposition(m).logdet_shifted(scale);
}

SymMatrix rank_one_update(SymMatrix m, const Vector& a) {
  m.add_outer(a);
  return m;
}

}  // namespace lazyts
