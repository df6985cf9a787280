// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sectorial/tbt.hpp"

namespace sectorial {

/// One maximal sectorial summand H = A^1/2 (I + iB) A^1/2, carried by its
/// real part A, the root of the operator part of A, the relation square root
/// A^1/2 (the operator part direct-summed with {0} x mul A), and the small
/// Hermitian B from the second representation.
struct SummandData {
  LinearRelation h;
  LinearRelation a;             // real part of h
  OperatorOnSubspace a_s_half;  // (A_s)^1/2 into ambient
  LinearRelation a_half;        // A^1/2 as a relation
  Matrix b_small;               // form-domain coordinates
  Matrix b_ambient;             // b_small extended by zero to the whole space
  Subspace dom;                 // form domain of h
};

SummandData prepare_summand(const LinearRelation& h, const ToleranceConfig& tol = {});

/// The joint geometry of two maximal sectorial summands: the relations
/// phi (from H x H to H), psi and phi* (from H to H x H), k and k*, the
/// ranges e/f, the closed domain d of k, the block operator b_oplus, and the
/// C0/C data for the split H x H = d + mul k*. Construction asserts the
/// inclusion chain k < phi < psi*, psi < phi* < k* and d = (I + i b_oplus) e.
struct SumExtensionWorkspace {
  SummandData s1, s2;
  int n = 0;  // underlying space dimension; relations live on C^n and C^2n
  LinearRelation phi, phi_star, psi, k_rel, k_star;
  Matrix b_oplus;      // 2n x 2n block diagonal
  Subspace e_space, f_space, d_space;
  SectorialDecomposition kdec;  // split of b_oplus along d_space + mul k*
  Matrix c0, c;                 // on d_space coordinates (kdec bases)
  Matrix p_d;                   // ambient projector onto d_space
};

SumExtensionWorkspace build_workspace(const SummandData& s1, const SummandData& s2,
                                      const ToleranceConfig& tol = {});

struct ExtensionResult {
  LinearRelation relation;
  double routes_gap = 0.0;  // distance between the two displayed expressions
};

/// Friedrichs extension of the sum: psi* (I + i b_oplus) psi, cross-checked
/// against psi* C0^1/2 (I + iC) C0^1/2 P_d psi.
ExtensionResult friedrichs_extension(const SumExtensionWorkspace& ws,
                                     const ToleranceConfig& tol = {});

struct KreinResult {
  LinearRelation relation;
  SesquilinearForm form;  // domain dom k*, matrix W^H (I + iC) W
  double routes_gap = 0.0;
};

/// Krein extension of the sum: k (I + i b_oplus) k*, cross-checked against
/// the reduced route through C0/C, together with its closed sectorial form.
KreinResult krein_extension(const SumExtensionWorkspace& ws,
                            const ToleranceConfig& tol = {});

/// Form sum extension phi (I + i b_oplus) phi*. Asserts it extends the
/// componentwise sum and represents the sum of the two summand forms.
LinearRelation form_sum_extension(const SumExtensionWorkspace& ws,
                                  const ToleranceConfig& tol = {});

/// Extremality of the form sum: e = f, cross-checked against the definition
/// (the form of the form sum restricts the Krein form). The two verdicts must
/// agree; disagreement throws.
bool is_form_sum_extremal(const SumExtensionWorkspace& ws, const ToleranceConfig& tol = {});

/// The extremal extension R^* (I + iC) R with R the restriction of
/// C0^1/2 (k*)_s to d_sub, for dom psi <= d_sub <= dom k*.
LinearRelation extremal_from_domain(const SumExtensionWorkspace& ws, const Subspace& d_sub,
                                    const ToleranceConfig& tol = {});

}  // namespace sectorial
