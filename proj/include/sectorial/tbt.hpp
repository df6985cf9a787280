// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "sectorial/forms.hpp"

namespace sectorial {

/// Block data of a selfadjoint B on the output space, split along
/// K = dom_star + mul_t where dom_star is the closure of dom T*. Carries the
/// auxiliary operators C0 (>= I) and C (Hermitian) living on dom_star, and
/// the operator part of T. All coordinates refer to the stored deterministic
/// bases of dom_star and mul_t.
struct SectorialDecomposition {
  Subspace dom_star;  // closure of dom T*, subspace of C^dim_k
  Subspace mul_t;     // mul T, its orthocomplement
  Matrix b11, b12, b22;
  Matrix c0, c;
  OperatorOnSubspace t_s;        // codomain: ambient output space
  double tan_gamma_bound = 0.0;  // ||C||
};

/// Split B along dom_star + mul_t. Fills the blocks and the operator part;
/// c0/c are left empty until compute_c0_c.
SectorialDecomposition decompose_blocks(const LinearRelation& t, const Matrix& b,
                                        const ToleranceConfig& tol = {});

/// C0 = I + B12 (I + B22^2)^-1 B12^H and
/// C = C0^-1/2 [B11 - B12 (I+B22^2)^-1/2 B22 (I+B22^2)^-1/2 B12^H] C0^-1/2.
/// Asserts C0 >= I and C Hermitian.
std::pair<Matrix, Matrix> compute_c0_c(const SectorialDecomposition& dec,
                                       const ToleranceConfig& tol = {});

/// decompose_blocks + compute_c0_c + the semi-angle bound ||C||.
SectorialDecomposition decompose(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol = {});

/// The coordinate form matrix W^H (I + iC) W on dom T, with
/// W = C0^1/2 * (T_s compressed into dom_star).
struct ReducedFormData {
  SectorialDecomposition dec;
  Subspace dom;       // dom T
  Matrix w;           // dom_star coords x dom T coords
  Matrix form_matrix; // W^H (I + iC) W
};

ReducedFormData reduced_form(const LinearRelation& t, const Matrix& b,
                             const ToleranceConfig& tol = {});

/// The literal product of relations T^* (I + iB) T.
LinearRelation construct_direct(const LinearRelation& t, const Matrix& b,
                                const ToleranceConfig& tol = {});

/// The same relation through the reduced route: the maximal sectorial
/// representative of the form W^H (I + iC) W on dom T.
LinearRelation construct_reduced(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol = {});

struct TbtIdentityReport {
  LinearRelation direct;
  LinearRelation reduced;
  double identity_gap = 0.0;     // gap(direct, reduced)
  double mul_gap = 0.0;          // gap(mul product, (dom T)^perp)
  SectorialityVerdict verdict;   // of the product
  double c_norm = 0.0;
  double b_norm = 0.0;
};

/// Runs both construction routes and the bookkeeping laws of the product.
TbtIdentityReport verify_identity(const LinearRelation& t, const Matrix& b,
                                  const ToleranceConfig& tol = {});

/// Whether (I + iB)phi lands in dom_star, with B reassembled from the
/// decomposition. Also evaluates the two equivalent characterizations (the
/// C0/C image formula, and the explicit formula for the mul-component of phi)
/// and insists all three verdicts agree.
bool reduced_image_check(const SectorialDecomposition& dec, const Vector& phi,
                         const ToleranceConfig& tol = {});

struct InvarianceFlags {
  bool diag = false;           // B is block diagonal for the split
  bool b12_zero = false;       // the off-diagonal block vanishes
  bool c0_is_identity = false;
  bool mul_invariant = false;  // B maps mul T into itself

  bool all() const { return diag && b12_zero && c0_is_identity && mul_invariant; }
};

/// The four equivalent invariance conditions, computed independently. They
/// must agree; disagreement is a falsification and throws. When they hold,
/// additionally asserts C = B11 and that the reduced construction matches the
/// invariant-case product (T_s adjoint) (I + iB11) T_s.
InvarianceFlags invariance_flags(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol = {});

/// For single-valued t, t2 representing the same form data: the unitary
/// U : ran t -> ran t2 with t2 = U t and the compressed b2 = U b U^H,
/// returned as an ambient matrix supported on ran t. Empty when the Gram
/// data differ (including unequal domains).
std::optional<Matrix> unitary_equivalence(const LinearRelation& t, const Matrix& b,
                                          const LinearRelation& t2, const Matrix& b2,
                                          const ToleranceConfig& tol = {});

}  // namespace sectorial
