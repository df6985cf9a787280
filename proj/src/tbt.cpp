// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/tbt.hpp"

#include <Eigen/Eigenvalues>

namespace sectorial {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

// f(B22) for f acting on the (real) spectrum of the Hermitian block B22.
template <typename F>
Matrix hermitian_calculus(const Matrix& m, F f) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

void require_hermitian_input(const Matrix& b, int dim_k, const ToleranceConfig& tol,
                             const char* who) {
  require_finite(b, who);
  if (b.rows() != dim_k || b.cols() != dim_k) {
    throw std::invalid_argument(std::string(who) + ": B must act on the output space");
  }
  if (!is_hermitian(b, tol.hermitian_tol)) {
    throw std::invalid_argument(std::string(who) + ": B must be selfadjoint");
  }
}

Matrix plus_i_times(const Matrix& c) {
  return Matrix::Identity(c.rows(), c.cols()) + kI * c;
}

}  // namespace

SectorialDecomposition decompose_blocks(const LinearRelation& t, const Matrix& b,
                                        const ToleranceConfig& tol) {
  require_hermitian_input(b, t.dim_k, tol, "decompose_blocks");
  const RelationParts p = parts(t, tol);
  SectorialDecomposition dec;
  dec.mul_t = p.mul;
  dec.dom_star = complement(p.mul);
  const Matrix& u1 = dec.dom_star.basis;
  const Matrix& u2 = dec.mul_t.basis;
  dec.b11 = hermitian_part(u1.adjoint() * b * u1);
  dec.b22 = hermitian_part(u2.adjoint() * b * u2);
  dec.b12 = u1.adjoint() * b * u2;
  dec.t_s = operator_part(t, tol);

  const Matrix reassembled = u1 * dec.b11 * u1.adjoint() + u2 * dec.b22 * u2.adjoint() +
                             u1 * dec.b12 * u2.adjoint() + u2 * dec.b12.adjoint() * u1.adjoint();
  if (op_norm(reassembled - b) > 1e-12 * std::max(op_norm(b), 1e-300)) {
    throw ConsistencyError("decompose_blocks: block reassembly does not reproduce B");
  }
  return dec;
}

std::pair<Matrix, Matrix> compute_c0_c(const SectorialDecomposition& dec,
                                       const ToleranceConfig& tol) {
  const int d1 = dec.dom_star.dim();
  if (d1 == 0) return {Matrix::Zero(0, 0), Matrix::Zero(0, 0)};
  // Hermitian calculus on B22; (I + B22^2) is always invertible.
  const Matrix inv = hermitian_calculus(dec.b22, [](double x) { return 1.0 / (1.0 + x * x); });
  const Matrix inv_half =
      hermitian_calculus(dec.b22, [](double x) { return 1.0 / std::sqrt(1.0 + x * x); });
  const Matrix c0 =
      Matrix::Identity(d1, d1) + dec.b12 * inv * dec.b12.adjoint();

  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(c0));
  if (d1 > 0 && es.eigenvalues().minCoeff() < 1.0 - tol.psd_tol) {
    throw ConsistencyError("compute_c0_c: C0 >= I failed; blocks are corrupted");
  }
  Matrix c0_inv_half = es.eigenvectors();
  {
    RealVector vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = 1.0 / std::sqrt(vals(i));
    c0_inv_half = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  }
  const Matrix core = dec.b11 - dec.b12 * inv_half * dec.b22 * inv_half * dec.b12.adjoint();
  const Matrix c = c0_inv_half * core * c0_inv_half;
  if (!is_hermitian(c, tol.hermitian_tol)) {
    throw ConsistencyError("compute_c0_c: C drifted from Hermitian");
  }
  return {hermitian_part(c0), hermitian_part(c)};
}

SectorialDecomposition decompose(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol) {
  SectorialDecomposition dec = decompose_blocks(t, b, tol);
  std::tie(dec.c0, dec.c) = compute_c0_c(dec, tol);
  dec.tan_gamma_bound = op_norm(dec.c);
  return dec;
}

ReducedFormData reduced_form(const LinearRelation& t, const Matrix& b,
                             const ToleranceConfig& tol) {
  ReducedFormData data;
  data.dec = decompose(t, b, tol);
  data.dom = data.dec.t_s.domain;
  const Matrix c0_half = psd_sqrt(data.dec.c0, tol);
  // T_s lands in dom_star; compress its ambient matrix there.
  const Matrix ts_red = data.dec.dom_star.basis.adjoint() * data.dec.t_s.matrix;
  data.w = c0_half * ts_red;
  data.form_matrix = data.w.adjoint() * plus_i_times(data.dec.c) * data.w;
  return data;
}

LinearRelation construct_direct(const LinearRelation& t, const Matrix& b,
                                const ToleranceConfig& tol) {
  require_hermitian_input(b, t.dim_k, tol, "construct_direct");
  const Matrix i_plus_ib = plus_i_times(b);
  return compose(adjoint(t, tol), apply_left(i_plus_ib, t, tol), tol);
}

LinearRelation construct_reduced(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol) {
  const ReducedFormData data = reduced_form(t, b, tol);
  return relation_of_form(SesquilinearForm{data.dom, data.form_matrix}, tol);
}

TbtIdentityReport verify_identity(const LinearRelation& t, const Matrix& b,
                                  const ToleranceConfig& tol) {
  const ReducedFormData data = reduced_form(t, b, tol);
  TbtIdentityReport report;
  report.direct = construct_direct(t, b, tol);
  report.reduced = relation_of_form(SesquilinearForm{data.dom, data.form_matrix}, tol);
  report.identity_gap = relation_gap(report.direct, report.reduced);
  const RelationParts p_prod = parts(report.direct, tol);
  const RelationParts p_t = parts(t, tol);
  report.mul_gap = gap(p_prod.mul, complement(p_t.dom));
  report.verdict = sectoriality(report.direct, tol);
  report.c_norm = op_norm(data.dec.c);
  report.b_norm = op_norm(b);
  return report;
}

bool reduced_image_check(const SectorialDecomposition& dec, const Vector& phi,
                         const ToleranceConfig& tol) {
  const int k = dec.dom_star.ambient_dim;
  if (phi.size() != k) {
    throw std::invalid_argument("reduced_image_check: dimension mismatch");
  }
  const Matrix& u1 = dec.dom_star.basis;
  const Matrix& u2 = dec.mul_t.basis;
  const Matrix b = u1 * dec.b11 * u1.adjoint() + u2 * dec.b22 * u2.adjoint() +
                   u1 * dec.b12 * u2.adjoint() + u2 * dec.b12.adjoint() * u1.adjoint();
  const Vector phi1 = u1.adjoint() * phi;  // dom_star coordinates
  const Vector phi2 = u2.adjoint() * phi;  // mul coordinates
  const Vector image = plus_i_times(b) * phi;
  const double scale = std::max(image.norm(), std::max(phi.norm(), 1e-300));

  const bool in_dom_star = (u2.adjoint() * image).norm() <= tol.subspace_eq_tol * scale;

  const Matrix c0_half = psd_sqrt(dec.c0, tol);
  const Vector via_c = u1 * (c0_half * (plus_i_times(dec.c) * (c0_half * phi1)));
  const bool matches_c_formula = (image - via_c).norm() <= tol.subspace_eq_tol * scale;

  const int d2 = dec.mul_t.dim();
  Vector phi2_formula;
  if (d2 > 0) {
    const Matrix lhs = Matrix::Identity(d2, d2) + kI * dec.b22;
    phi2_formula = -kI * lhs.partialPivLu().solve(dec.b12.adjoint() * phi1);
  } else {
    phi2_formula = Vector::Zero(0);
  }
  const bool matches_mul_formula = (phi2 - phi2_formula).norm() <= tol.subspace_eq_tol * scale;

  if (in_dom_star != matches_c_formula || in_dom_star != matches_mul_formula) {
    throw ConsistencyError("reduced_image_check: the three equivalent conditions disagree");
  }
  return in_dom_star;
}

InvarianceFlags invariance_flags(const LinearRelation& t, const Matrix& b,
                                 const ToleranceConfig& tol) {
  const SectorialDecomposition dec = decompose(t, b, tol);
  const double b_scale = std::max(op_norm(b), 1e-300);
  const Matrix& u1 = dec.dom_star.basis;
  const Matrix& u2 = dec.mul_t.basis;

  InvarianceFlags flags;
  const Matrix block_diag = u1 * dec.b11 * u1.adjoint() + u2 * dec.b22 * u2.adjoint();
  flags.diag = op_norm(b - block_diag) <= tol.subspace_eq_tol * b_scale;
  flags.b12_zero = op_norm(dec.b12) <= tol.subspace_eq_tol * b_scale;
  flags.c0_is_identity =
      op_norm(dec.c0 - Matrix::Identity(dec.c0.rows(), dec.c0.cols())) <= tol.subspace_eq_tol;
  const Matrix leak = (Matrix::Identity(t.dim_k, t.dim_k) - dec.mul_t.projector()) * b * u2;
  flags.mul_invariant = op_norm(leak) <= tol.subspace_eq_tol * b_scale;

  const int agree = flags.diag + flags.b12_zero + flags.c0_is_identity + flags.mul_invariant;
  if (agree != 0 && agree != 4) {
    throw ConsistencyError("invariance_flags: the four equivalent conditions disagree");
  }
  if (flags.all()) {
    if (op_norm(dec.c - dec.b11) > 1e-10 * b_scale) {
      throw ConsistencyError("invariance_flags: C != B11 in the invariant case");
    }
    // Invariant-case product (T_s adjoint into dom_star)(I + i B11)(T_s).
    const Matrix ts_red = u1.adjoint() * dec.t_s.matrix;
    Matrix gens(t.dim_h + dec.dom_star.dim(), dec.t_s.domain.dim());
    gens.topRows(t.dim_h) = dec.t_s.domain.basis;
    gens.bottomRows(dec.dom_star.dim()) = ts_red;
    if (dec.dom_star.dim() > 0) {
      const LinearRelation ts_rel =
          make_relation(t.dim_h, dec.dom_star.dim(), gens, tol);
      const LinearRelation invariant_route = compose(
          adjoint(ts_rel, tol), apply_left(plus_i_times(dec.b11), ts_rel, tol), tol);
      if (relation_gap(invariant_route, construct_reduced(t, b, tol)) > tol.subspace_eq_tol) {
        throw ConsistencyError("invariance_flags: invariant-case product route diverged");
      }
    }
  }
  return flags;
}

std::optional<Matrix> unitary_equivalence(const LinearRelation& t, const Matrix& b,
                                          const LinearRelation& t2, const Matrix& b2,
                                          const ToleranceConfig& tol) {
  require_hermitian_input(b, t.dim_k, tol, "unitary_equivalence");
  require_hermitian_input(b2, t2.dim_k, tol, "unitary_equivalence");
  if (t.dim_h != t2.dim_h) {
    throw std::invalid_argument("unitary_equivalence: input spaces differ");
  }
  const RelationParts p = parts(t, tol);
  const RelationParts p2 = parts(t2, tol);
  if (p.mul.dim() != 0 || p2.mul.dim() != 0) {
    throw std::invalid_argument("unitary_equivalence: inputs must be single-valued");
  }
  if (gap(p.dom, p2.dom) > tol.subspace_eq_tol) return std::nullopt;

  // Express both operators on the first relation's domain basis.
  const Matrix m1 = t.output_rows() * pseudo_inverse(t.input_rows(), tol) * p.dom.basis;
  const Matrix m2 = t2.output_rows() * pseudo_inverse(t2.input_rows(), tol) * p.dom.basis;
  const double scale = std::max({op_norm(m1), op_norm(m2), 1e-300});
  const double b_scale = std::max({op_norm(b), op_norm(b2), 1.0});
  if (op_norm(m1.adjoint() * m1 - m2.adjoint() * m2) > tol.subspace_eq_tol * scale * scale) {
    return std::nullopt;
  }
  if (op_norm(m1.adjoint() * b * m1 - m2.adjoint() * b2 * m2) >
      tol.subspace_eq_tol * scale * scale * b_scale) {
    return std::nullopt;
  }
  // T h -> T2 h, zero on (ran t)^perp.
  return m2 * pseudo_inverse(m1, tol);
}

}  // namespace sectorial
