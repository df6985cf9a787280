// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sectorial {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Inner product convention used everywhere: (x, y) = sum_i x_i * conj(y_i),
// linear in the first argument and antilinear in the second.
inline Complex inner(const Vector& x, const Vector& y) {
  return (y.adjoint() * x)(0, 0);
}

/// Thrown when an internal cross-check fails. Such a failure falsifies an
/// identity the library is supposed to certify, so it is never swallowed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Relative tolerances for rank decisions, subspace equality, positivity and
/// Hermitian-symmetry checks. All are dimensionless, relative to the largest
/// singular value of the object under test.
struct ToleranceConfig {
  double rank_rel_tol = 1e-10;
  double subspace_eq_tol = 1e-8;
  double psd_tol = 1e-10;
  double hermitian_tol = 1e-10;

  void validate() const {
    for (double v : {rank_rel_tol, subspace_eq_tol, psd_tol, hermitian_tol}) {
      if (!(v > 0.0) || !(v < 1e-2)) {
        throw std::invalid_argument(
            "ToleranceConfig: all tolerances must lie in (0, 1e-2)");
      }
    }
  }
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(what + ": non-finite entries");
  }
}

}  // namespace sectorial
