// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "sectorial/relation.hpp"

namespace sectorial {

/// A sesquilinear form t[h, k] = coords(k)^H * matrix * coords(h) carried by a
/// domain subspace; linear in h, antilinear in k.
struct SesquilinearForm {
  Subspace domain;
  Matrix matrix;  // domain.dim() x domain.dim()

  Matrix real_part() const { return (matrix + matrix.adjoint()) / 2.0; }
  Matrix imag_part() const { return (matrix - matrix.adjoint()) / (2.0 * Complex(0, 1)); }
  /// The form as an ambient operator D * M * D^H; basis-independent equality probe.
  Matrix ambient_operator() const { return domain.basis * matrix * domain.basis.adjoint(); }
};

struct SectorialityVerdict {
  bool is_accretive = false;
  bool is_sectorial = false;
  std::optional<double> tan_alpha;  // present iff is_sectorial
  bool is_maximal = false;
};

/// Data of the representation t[h, k] = ((I + iG) S h, S k) with S the square
/// root of the operator part of the real part and G Hermitian, ||G|| = tan a.
struct SecondRepresentation {
  LinearRelation h_r;          // real part, selfadjoint nonnegative
  OperatorOnSubspace s_half;   // S, as a map from the form domain into ambient
  Matrix g;                    // Hermitian, domain coordinates, trivial on ker S
  double tan_alpha = 0.0;
};

/// With the graph basis split into input rows Q and output rows Q', returns
/// N = Q^H Q' so that (h', h) = z^H N z for graph coordinates z.
Matrix graph_pairing(const LinearRelation& t);

/// Accretivity/sectoriality of the quadratic form (h', h) over the graph, the
/// optimal tan of the semi-angle, and maximality via ran(I + H) = full space.
SectorialityVerdict sectoriality(const LinearRelation& t, const ToleranceConfig& tol = {});

bool is_maximal_sectorial(const LinearRelation& t, const ToleranceConfig& tol = {});

/// The closed sectorial form represented by a maximal sectorial relation:
/// t[h, k] = (h', k) for any output representative h' of h.
SesquilinearForm form_of(const LinearRelation& h, const ToleranceConfig& tol = {});

/// The maximal sectorial relation representing a sectorial form:
/// {(h, M h + m) : h in domain, m in domain^perp}.
LinearRelation relation_of_form(const SesquilinearForm& f, const ToleranceConfig& tol = {});

/// The nonnegative selfadjoint relation representing the real part of the form.
LinearRelation real_part_relation(const LinearRelation& h, const ToleranceConfig& tol = {});

SecondRepresentation second_representation(const LinearRelation& h,
                                           const ToleranceConfig& tol = {});

/// Rebuilds the relation from its second representation; the roundtrip must
/// reproduce the input relation.
LinearRelation reconstruct_second_rep(const SecondRepresentation& rep,
                                      const ToleranceConfig& tol = {});

/// Smallest admissible tan of the semi-angle for the Hermitian pencil
/// (m_r, m_i): the norm of S+ m_i S+ with S the PSD root of m_r. Requires
/// ker m_r inside ker m_i.
double pencil_tan_alpha(const Matrix& m_r, const Matrix& m_i, const ToleranceConfig& tol = {});

}  // namespace sectorial
