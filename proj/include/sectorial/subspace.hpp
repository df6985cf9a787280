// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sectorial/types.hpp"

namespace sectorial {

/// A subspace of C^d, stored as an orthonormal basis. The zero subspace is a
/// first-class value (basis with zero columns). Immutable after construction.
struct Subspace {
  int ambient_dim = 0;
  Matrix basis;  // ambient_dim x dim, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }

  /// Orthogonal projector onto the subspace (ambient_dim square).
  Matrix projector() const { return basis * basis.adjoint(); }

  static Subspace zero(int ambient_dim) {
    return Subspace{ambient_dim, Matrix::Zero(ambient_dim, 0)};
  }
  static Subspace full(int ambient_dim) {
    return Subspace{ambient_dim, Matrix::Identity(ambient_dim, ambient_dim)};
  }
};

/// Column span of `generators`, rank decided by singular values relative to
/// the largest one. Basis columns are left singular vectors with a
/// deterministic phase (first significant component made real positive).
Subspace orthonormalize(const Matrix& generators, const ToleranceConfig& tol = {});

/// Orthogonal complement within the ambient space.
Subspace complement(const Subspace& s);

Subspace join(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol = {});
Subspace meet(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol = {});

/// Operator norm of the difference of the orthogonal projectors. This is the
/// library's notion of subspace equality: 0 iff equal, always in [0, 1].
double gap(const Subspace& s1, const Subspace& s2);

/// Does every vector of s1 lie in s2 (residual at most tol.subspace_eq_tol)?
bool subspace_leq(const Subspace& s1, const Subspace& s2, const ToleranceConfig& tol = {});

/// Hermitian PSD square root via eigendecomposition; eigenvalues slightly
/// below zero (within psd_tol relative to the norm) are clamped to zero.
Matrix psd_sqrt(const Matrix& m, const ToleranceConfig& tol = {});

/// Moore-Penrose inverse with singular values below rank_rel_tol * sigma_max
/// treated as zero.
Matrix pseudo_inverse(const Matrix& m, const ToleranceConfig& tol = {});

/// Largest singular value.
double op_norm(const Matrix& m);

/// Largest |x - x^H| deviation measured in operator norm, relative check.
bool is_hermitian(const Matrix& m, double rel_tol);

}  // namespace sectorial
