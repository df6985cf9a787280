// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/forms.hpp"

#include <Eigen/Eigenvalues>

namespace sectorial {

namespace {

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Matrix antihermitian_part(const Matrix& m) {
  return (m - m.adjoint()) / (2.0 * Complex(0, 1));
}

// Scale for pencil tolerances. Form matrices are compared against their own
// norm, floored at one: graph pairings are normalized (norm at most 1), so
// pure roundoff around an exactly-zero form must count as zero rather than
// fail a test relative to its own dirt.
double pencil_scale(const Matrix& m) { return std::max(op_norm(m), 1.0); }

// Eigenvectors of a Hermitian matrix with eigenvalue below the rank cutoff.
Matrix kernel_basis(const Matrix& m, const ToleranceConfig& tol) {
  if (m.rows() == 0) return Matrix::Zero(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const RealVector evals = es.eigenvalues().cwiseAbs();
  const double cutoff = tol.rank_rel_tol * pencil_scale(m);
  int nulls = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) <= cutoff) ++nulls;
  }
  // Ascending eigenvalue order and |.| of a PSD spectrum put nulls first.
  return es.eigenvectors().leftCols(nulls);
}

bool kernel_contained(const Matrix& m_r, const Matrix& m_i, const ToleranceConfig& tol) {
  const Matrix null_r = kernel_basis(m_r, tol);
  if (null_r.cols() == 0) return true;
  return op_norm(m_i * null_r) <= tol.psd_tol * pencil_scale(m_i);
}

bool psd_within(const Matrix& m, const ToleranceConfig& tol) {
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol.psd_tol * pencil_scale(m);
}

// Output representatives of the domain basis: columns h'_j with
// (dom_j, h'_j) in the relation.
Matrix output_representatives(const LinearRelation& t, const Subspace& dom,
                              const ToleranceConfig& tol) {
  return t.output_rows() * pseudo_inverse(t.input_rows(), tol) * dom.basis;
}

// Root, pseudo-inverse root and kernel of a Hermitian PSD matrix from one
// eigendecomposition. The rank decision is made on the spectrum of m itself;
// cutting on singular values of the root would square the tolerance and let
// near-kernel noise through the inverse.
struct PsdRootSplit {
  Matrix root;
  Matrix root_pinv;
  Matrix kernel;  // eigenvectors of the dropped part
};

PsdRootSplit split_psd_root(const Matrix& m, const ToleranceConfig& tol) {
  PsdRootSplit out;
  if (m.rows() == 0) {
    out.root = out.root_pinv = m;
    out.kernel = Matrix::Zero(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const RealVector& evals = es.eigenvalues();
  const double cutoff = tol.rank_rel_tol * pencil_scale(m);
  RealVector root = RealVector::Zero(evals.size());
  RealVector inv = RealVector::Zero(evals.size());
  int nulls = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > cutoff) {
      root(i) = std::sqrt(evals(i));
      inv(i) = 1.0 / root(i);
    } else {
      ++nulls;
    }
  }
  out.root = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  out.root_pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  // Ascending order puts the dropped eigenvalues first for a PSD spectrum.
  out.kernel = es.eigenvectors().leftCols(nulls);
  return out;
}

}  // namespace

Matrix graph_pairing(const LinearRelation& t) {
  if (t.dim_h != t.dim_k) {
    throw std::invalid_argument("graph_pairing: relation must live in one space");
  }
  return t.input_rows().adjoint() * t.output_rows();
}

SectorialityVerdict sectoriality(const LinearRelation& t, const ToleranceConfig& tol) {
  const Matrix n = graph_pairing(t);
  const Matrix n_r = hermitian_part(n);
  const Matrix n_i = antihermitian_part(n);
  SectorialityVerdict v;
  v.is_accretive = psd_within(n_r, tol);
  v.is_sectorial = v.is_accretive && kernel_contained(n_r, n_i, tol);
  if (v.is_sectorial) {
    v.tan_alpha = pencil_tan_alpha(n_r, n_i, tol);
  }
  const LinearRelation shifted = add_relations(t, identity_relation(t.dim_h), tol);
  v.is_maximal = parts(shifted, tol).ran.dim() == t.dim_h;
  return v;
}

bool is_maximal_sectorial(const LinearRelation& t, const ToleranceConfig& tol) {
  const SectorialityVerdict v = sectoriality(t, tol);
  return v.is_sectorial && v.is_maximal;
}

double pencil_tan_alpha(const Matrix& m_r, const Matrix& m_i, const ToleranceConfig& tol) {
  if (m_r.rows() == 0) return 0.0;
  if (!kernel_contained(m_r, m_i, tol)) {
    throw std::invalid_argument("pencil_tan_alpha: ker of the real part leaks");
  }
  const PsdRootSplit split = split_psd_root(m_r, tol);
  return op_norm(split.root_pinv * m_i * split.root_pinv);
}

SesquilinearForm form_of(const LinearRelation& h, const ToleranceConfig& tol) {
  const SectorialityVerdict v = sectoriality(h, tol);
  if (!v.is_sectorial || !v.is_maximal) {
    throw std::invalid_argument("form_of: relation is not maximal sectorial");
  }
  const RelationParts p = parts(h, tol);
  if (gap(p.mul, complement(p.dom)) > tol.subspace_eq_tol) {
    throw ConsistencyError("form_of: mul H != (dom H)^perp for a maximal sectorial H");
  }
  // t[h_j, h_l] = (h'_j, h_l); the projection onto dom kills the ambiguity in
  // the representative because mul H = (dom H)^perp.
  const Matrix reps = output_representatives(h, p.dom, tol);
  SesquilinearForm f;
  f.domain = p.dom;
  f.matrix = p.dom.basis.adjoint() * reps;
  return f;
}

LinearRelation relation_of_form(const SesquilinearForm& f, const ToleranceConfig& tol) {
  require_finite(f.matrix, "relation_of_form");
  const int d = f.domain.dim();
  if (f.matrix.rows() != d || f.matrix.cols() != d) {
    throw std::invalid_argument("relation_of_form: matrix does not match the domain");
  }
  if (!psd_within(f.real_part(), tol) ||
      !kernel_contained(f.real_part(), f.imag_part(), tol)) {
    throw std::invalid_argument("relation_of_form: form is not sectorial");
  }
  const int n = f.domain.ambient_dim;
  const Subspace perp = complement(f.domain);
  Matrix gens(2 * n, d + perp.dim());
  gens.setZero();
  gens.block(0, 0, n, d) = f.domain.basis;
  gens.block(n, 0, n, d) = f.domain.basis * f.matrix;
  gens.block(n, d, n, perp.dim()) = perp.basis;
  return make_relation(n, n, gens, tol);
}

LinearRelation real_part_relation(const LinearRelation& h, const ToleranceConfig& tol) {
  const SesquilinearForm f = form_of(h, tol);
  return relation_of_form(SesquilinearForm{f.domain, f.real_part()}, tol);
}

SecondRepresentation second_representation(const LinearRelation& h,
                                           const ToleranceConfig& tol) {
  const SesquilinearForm f = form_of(h, tol);
  const Matrix m_r = f.real_part();
  const Matrix m_i = f.imag_part();
  if (!kernel_contained(m_r, m_i, tol)) {
    throw ConsistencyError("second_representation: input not sectorial");
  }
  const PsdRootSplit split = split_psd_root(m_r, tol);
  const Matrix g_raw = split.root_pinv * m_i * split.root_pinv;
  if (!is_hermitian(g_raw, tol.hermitian_tol)) {
    throw ConsistencyError("second_representation: G drifted from Hermitian");
  }
  SecondRepresentation rep;
  rep.g = hermitian_part(g_raw);
  rep.h_r = relation_of_form(SesquilinearForm{f.domain, m_r}, tol);
  rep.s_half =
      OperatorOnSubspace{f.domain, f.domain.ambient_dim, f.domain.basis * split.root};
  rep.tan_alpha = op_norm(rep.g);

  if (op_norm(split.root * rep.g * split.root - m_i) > 1e-8 * pencil_scale(f.matrix)) {
    throw ConsistencyError("second_representation: S G S does not reproduce the imaginary part");
  }
  const SectorialityVerdict v = sectoriality(h, tol);
  if (std::abs(rep.tan_alpha - v.tan_alpha.value()) > 1e-8 * std::max(1.0, v.tan_alpha.value())) {
    throw ConsistencyError("second_representation: ||G|| != tan alpha");
  }
  return rep;
}

LinearRelation reconstruct_second_rep(const SecondRepresentation& rep,
                                      const ToleranceConfig& tol) {
  const Subspace& dom = rep.s_half.domain;
  const Matrix s = dom.basis.adjoint() * rep.s_half.matrix;
  const int d = dom.dim();
  const Matrix m = s * (Matrix::Identity(d, d) + Complex(0, 1) * rep.g) * s;
  return relation_of_form(SesquilinearForm{dom, m}, tol);
}

}  // namespace sectorial
