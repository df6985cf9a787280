// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sectorial {

namespace {

// Multiply each column by a unit phase so its first significant entry is
// real positive. Columns are unit vectors, so an entry above 1e-8 exists.
void fix_phases(Matrix& q) {
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      const double a = std::abs(q(i, j));
      if (a > 1e-8) {
        q.col(j) *= std::conj(q(i, j)) / a;
        break;
      }
    }
  }
}

}  // namespace

Subspace orthonormalize(const Matrix& generators, const ToleranceConfig& tol) {
  require_finite(generators, "orthonormalize");
  const int n = static_cast<int>(generators.rows());
  if (n <= 0) throw std::invalid_argument("orthonormalize: empty ambient space");
  if (generators.cols() == 0) return Subspace::zero(n);

  Eigen::JacobiSVD<Matrix> svd(generators, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) >= tol.rank_rel_tol * smax) ++rank;
    }
  }
  Matrix basis = svd.matrixU().leftCols(rank);
  fix_phases(basis);
  return Subspace{n, std::move(basis)};
}

Subspace complement(const Subspace& s) {
  const int n = s.ambient_dim;
  if (s.dim() == 0) return Subspace::full(n);
  if (s.dim() == n) return Subspace::zero(n);
  // Trailing left singular vectors of the basis span the orthocomplement.
  Eigen::JacobiSVD<Matrix> svd(s.basis, Eigen::ComputeFullU);
  Matrix basis = svd.matrixU().rightCols(n - s.dim());
  fix_phases(basis);
  return Subspace{n, std::move(basis)};
}

Subspace join(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol) {
  if (s1.ambient_dim != s2.ambient_dim) {
    throw std::invalid_argument("join: ambient dimension mismatch");
  }
  Matrix gens(s1.ambient_dim, s1.dim() + s2.dim());
  gens << s1.basis, s2.basis;
  return orthonormalize(gens, tol);
}

Subspace meet(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol) {
  if (s1.ambient_dim != s2.ambient_dim) {
    throw std::invalid_argument("meet: ambient dimension mismatch");
  }
  return complement(join(complement(s1), complement(s2), tol));
}

double gap(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim != s2.ambient_dim) {
    throw std::invalid_argument("gap: ambient dimension mismatch");
  }
  const Matrix diff = s1.projector() - s2.projector();
  if (diff.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool subspace_leq(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol) {
  if (s1.ambient_dim != s2.ambient_dim) {
    throw std::invalid_argument("subspace_leq: ambient dimension mismatch");
  }
  if (s1.dim() == 0) return true;
  const Matrix residual = s1.basis - s2.projector() * s1.basis;
  return op_norm(residual) <= tol.subspace_eq_tol;
}

Matrix psd_sqrt(const Matrix& m, const ToleranceConfig& tol) {
  require_finite(m, "psd_sqrt");
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_sqrt: matrix not square");
  if (m.rows() == 0) return m;
  const double scale = op_norm(m);
  if (!is_hermitian(m, tol.hermitian_tol)) {
    throw std::invalid_argument("psd_sqrt: matrix not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  RealVector evals = es.eigenvalues();
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) < -tol.psd_tol * scale) {
      throw std::invalid_argument("psd_sqrt: materially negative eigenvalue");
    }
    evals(i) = std::sqrt(std::max(evals(i), 0.0));
  }
  return es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix pseudo_inverse(const Matrix& m, const ToleranceConfig& tol) {
  require_finite(m, "pseudo_inverse");
  if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  RealVector inv = RealVector::Zero(sigma.size());
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) >= tol.rank_rel_tol * smax) inv(i) = 1.0 / sigma(i);
    }
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double op_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

bool is_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  const double scale = std::max(op_norm(m), 1e-300);
  return op_norm(m - m.adjoint()) <= rel_tol * scale;
}

}  // namespace sectorial
