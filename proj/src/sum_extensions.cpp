// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/sum_extensions.hpp"

namespace sectorial {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix plus_i_times(const Matrix& c) {
  return Matrix::Identity(c.rows(), c.cols()) + kI * c;
}

// Matrix of C0^1/2 (k*)_s restricted to a subspace of dom k*, expressed in
// d_space coordinates.
Matrix restricted_root_matrix(const SumExtensionWorkspace& ws, const Subspace& d_sub,
                              const OperatorOnSubspace& ks_op, const ToleranceConfig& tol) {
  const Matrix c0_half = psd_sqrt(ws.c0, tol);
  return c0_half * ws.kdec.dom_star.basis.adjoint() * ks_op.matrix *
         ks_op.domain.basis.adjoint() * d_sub.basis;
}

}  // namespace

SummandData prepare_summand(const LinearRelation& h, const ToleranceConfig& tol) {
  if (h.dim_h != h.dim_k) {
    throw std::invalid_argument("prepare_summand: summand must live in one space");
  }
  const int n = h.dim_h;
  SummandData s;
  s.h = h;
  const SecondRepresentation rep = second_representation(h, tol);
  s.a = rep.h_r;
  s.a_s_half = rep.s_half;
  s.b_small = rep.g;
  s.dom = rep.s_half.domain;
  s.b_ambient = s.dom.basis * s.b_small * s.dom.basis.adjoint();

  // A^1/2 = A_s^1/2 direct-sum ({0} x mul A).
  const Subspace mul_a = complement(s.dom);
  Matrix gens(2 * n, s.dom.dim() + mul_a.dim());
  gens.setZero();
  gens.block(0, 0, n, s.dom.dim()) = s.dom.basis;
  gens.block(n, 0, n, s.dom.dim()) = s.a_s_half.matrix;
  gens.block(n, s.dom.dim(), n, mul_a.dim()) = mul_a.basis;
  s.a_half = make_relation(n, n, gens, tol);

  // The factorization must reproduce the summand.
  const LinearRelation rebuilt = compose(
      s.a_half, apply_left(plus_i_times(s.b_ambient), s.a_half, tol), tol);
  if (relation_gap(rebuilt, h) > tol.subspace_eq_tol) {
    throw ConsistencyError("prepare_summand: A^1/2 (I+iB) A^1/2 does not reproduce H");
  }
  return s;
}

SumExtensionWorkspace build_workspace(const SummandData& s1, const SummandData& s2,
                                      const ToleranceConfig& tol) {
  if (s1.h.dim_h != s2.h.dim_h) {
    throw std::invalid_argument("build_workspace: summands live in different spaces");
  }
  SumExtensionWorkspace ws;
  ws.s1 = s1;
  ws.s2 = s2;
  const int n = s1.h.dim_h;
  ws.n = n;

  // phi: (f1, f2) -> f1' + f2' over the graphs of the square roots.
  {
    const int g1 = s1.a_half.graph_dim(), g2 = s2.a_half.graph_dim();
    Matrix gens(3 * n, g1 + g2);
    gens.setZero();
    gens.block(0, 0, n, g1) = s1.a_half.input_rows();
    gens.block(2 * n, 0, n, g1) = s1.a_half.output_rows();
    gens.block(n, g1, n, g2) = s2.a_half.input_rows();
    gens.block(2 * n, g1, n, g2) = s2.a_half.output_rows();
    ws.phi = make_relation(2 * n, n, gens, tol);
  }
  ws.phi_star = adjoint(ws.phi, tol);

  const Subspace meet_dom = meet(s1.dom, s2.dom, tol);
  const int dm = meet_dom.dim();

  // psi: h -> (S1 h, S2 h) on dom H1 \cap dom H2.
  {
    Matrix gens(3 * n, dm);
    gens.topRows(n) = meet_dom.basis;
    gens.middleRows(n, n) = s1.a_s_half.matrix * (s1.dom.basis.adjoint() * meet_dom.basis);
    gens.bottomRows(n) = s2.a_s_half.matrix * (s2.dom.basis.adjoint() * meet_dom.basis);
    ws.psi = make_relation(n, 2 * n, gens, tol);
  }

  // k: ((I+iB1) S1 f, (I+iB2) S2 f) -> S1 (I+iB1) S1 f + S2 (I+iB2) S2 f,
  // plus the full multivalued part mul H1 + mul H2.
  {
    const Matrix s1m = s1.a_s_half.matrix * (s1.dom.basis.adjoint() * meet_dom.basis);
    const Matrix s2m = s2.a_s_half.matrix * (s2.dom.basis.adjoint() * meet_dom.basis);
    const Matrix v1 = plus_i_times(s1.b_ambient) * s1m;
    const Matrix v2 = plus_i_times(s2.b_ambient) * s2m;
    const Matrix out0 = s1.a_s_half.matrix * (s1.dom.basis.adjoint() * v1) +
                        s2.a_s_half.matrix * (s2.dom.basis.adjoint() * v2);
    const Subspace mul_sum = join(complement(s1.dom), complement(s2.dom), tol);
    Matrix gens(3 * n, dm + mul_sum.dim());
    gens.setZero();
    gens.block(0, 0, n, dm) = v1;
    gens.block(n, 0, n, dm) = v2;
    gens.block(2 * n, 0, n, dm) = out0;
    gens.block(2 * n, dm, n, mul_sum.dim()) = mul_sum.basis;
    ws.k_rel = make_relation(2 * n, n, gens, tol);
  }
  ws.k_star = adjoint(ws.k_rel, tol);

  ws.e_space = parts(ws.psi, tol).ran;
  ws.f_space = orthonormalize(operator_part(ws.phi_star, tol).matrix, tol);
  ws.d_space = parts(ws.k_rel, tol).dom;

  ws.b_oplus = Matrix::Zero(2 * n, 2 * n);
  ws.b_oplus.topLeftCorner(n, n) = s1.b_ambient;
  ws.b_oplus.bottomRightCorner(n, n) = s2.b_ambient;

  ws.kdec = decompose(ws.k_star, ws.b_oplus, tol);
  if (gap(ws.kdec.dom_star, ws.d_space) > tol.subspace_eq_tol) {
    throw ConsistencyError("build_workspace: closure of dom k differs from (mul k*)^perp");
  }
  // Use the split's basis for all d_space coordinates downstream.
  ws.d_space = ws.kdec.dom_star;
  ws.c0 = ws.kdec.c0;
  ws.c = ws.kdec.c;
  ws.p_d = ws.d_space.projector();

  const LinearRelation psi_star = adjoint(ws.psi, tol);
  if (!relation_leq(ws.k_rel, ws.phi, tol) || !relation_leq(ws.phi, psi_star, tol) ||
      !relation_leq(ws.psi, ws.phi_star, tol) || !relation_leq(ws.phi_star, ws.k_star, tol)) {
    throw ConsistencyError("build_workspace: inclusion chain k < phi < psi*, psi < phi* < k* failed");
  }

  const Subspace image_of_e =
      orthonormalize(plus_i_times(ws.b_oplus) * ws.e_space.basis, tol);
  if (gap(ws.d_space, image_of_e) > tol.subspace_eq_tol) {
    throw ConsistencyError("build_workspace: d != (I + i b_oplus) e");
  }
  return ws;
}

ExtensionResult friedrichs_extension(const SumExtensionWorkspace& ws,
                                     const ToleranceConfig& tol) {
  const LinearRelation psi_star = adjoint(ws.psi, tol);
  const LinearRelation route1 =
      compose(psi_star, apply_left(plus_i_times(ws.b_oplus), ws.psi, tol), tol);

  // psi* C0^1/2 (I + iC) C0^1/2 P_d psi, with the middle factors acting in
  // d_space coordinates.
  const OperatorOnSubspace psi_op = operator_part(ws.psi, tol);
  const Matrix c0_half = psd_sqrt(ws.c0, tol);
  const Matrix middle = ws.d_space.basis *
                        (c0_half * plus_i_times(ws.c) * c0_half) *
                        ws.d_space.basis.adjoint() * psi_op.matrix;
  const LinearRelation route2 = compose(
      psi_star, to_relation(OperatorOnSubspace{psi_op.domain, 2 * ws.n, middle}, tol), tol);

  ExtensionResult res;
  res.routes_gap = relation_gap(route1, route2);
  if (res.routes_gap > tol.subspace_eq_tol) {
    throw ConsistencyError("friedrichs_extension: the two displayed routes disagree");
  }
  res.relation = route1;
  return res;
}

KreinResult krein_extension(const SumExtensionWorkspace& ws, const ToleranceConfig& tol) {
  const LinearRelation route1 = construct_direct(ws.k_star, ws.b_oplus, tol);
  const ReducedFormData reduced = reduced_form(ws.k_star, ws.b_oplus, tol);
  const SesquilinearForm form{reduced.dom, reduced.form_matrix};
  const LinearRelation route2 = relation_of_form(form, tol);

  KreinResult res;
  res.routes_gap = relation_gap(route1, route2);
  if (res.routes_gap > tol.subspace_eq_tol) {
    throw ConsistencyError("krein_extension: the two displayed routes disagree");
  }
  res.relation = route1;
  res.form = form;
  return res;
}

LinearRelation form_sum_extension(const SumExtensionWorkspace& ws,
                                  const ToleranceConfig& tol) {
  const LinearRelation fs = construct_direct(ws.phi_star, ws.b_oplus, tol);
  const LinearRelation sum = add_relations(ws.s1.h, ws.s2.h, tol);
  if (!relation_leq(sum, fs, tol)) {
    throw ConsistencyError("form_sum_extension: result does not extend the sum");
  }

  // The represented form must be the sum of the summand forms on the
  // intersection of the root domains.
  const SesquilinearForm f = form_of(fs, tol);
  const Matrix s1m = ws.s1.a_s_half.matrix * (ws.s1.dom.basis.adjoint() * f.domain.basis);
  const Matrix s2m = ws.s2.a_s_half.matrix * (ws.s2.dom.basis.adjoint() * f.domain.basis);
  const Matrix display = s1m.adjoint() * plus_i_times(ws.s1.b_ambient) * s1m +
                         s2m.adjoint() * plus_i_times(ws.s2.b_ambient) * s2m;
  const double scale = std::max(op_norm(f.matrix), 1e-300);
  if (op_norm(f.matrix - display) > tol.subspace_eq_tol * scale) {
    throw ConsistencyError("form_sum_extension: form does not match the summed display");
  }
  return fs;
}

bool is_form_sum_extremal(const SumExtensionWorkspace& ws, const ToleranceConfig& tol) {
  const bool ef_verdict = gap(ws.e_space, ws.f_space) <= tol.subspace_eq_tol;

  const LinearRelation fs = form_sum_extension(ws, tol);
  const SesquilinearForm fs_form = form_of(fs, tol);
  const SesquilinearForm kr_form = krein_extension(ws, tol).form;
  bool restriction_verdict = subspace_leq(fs_form.domain, kr_form.domain, tol);
  if (restriction_verdict) {
    const Matrix coords = kr_form.domain.basis.adjoint() * fs_form.domain.basis;
    const Matrix restricted = coords.adjoint() * kr_form.matrix * coords;
    const double scale =
        std::max({op_norm(fs_form.matrix), op_norm(kr_form.matrix), 1e-300});
    restriction_verdict = op_norm(restricted - fs_form.matrix) <= tol.subspace_eq_tol * scale;
  }
  if (ef_verdict != restriction_verdict) {
    throw ConsistencyError("is_form_sum_extremal: e = f and the restriction verdict disagree");
  }
  return ef_verdict;
}

LinearRelation extremal_from_domain(const SumExtensionWorkspace& ws, const Subspace& d_sub,
                                    const ToleranceConfig& tol) {
  if (d_sub.ambient_dim != ws.n) {
    throw std::invalid_argument("extremal_from_domain: domain lives in the wrong space");
  }
  const OperatorOnSubspace ks_op = operator_part(ws.k_star, tol);
  const Subspace psi_dom = parts(ws.psi, tol).dom;

  // dom psi <= d_sub <= dom k*, checked on the induced restrictions of
  // C0^1/2 (k*)_s when the middle space is nontrivial.
  if (!subspace_leq(psi_dom, d_sub, tol) || !subspace_leq(d_sub, ks_op.domain, tol)) {
    throw std::invalid_argument("extremal_from_domain: domain outside the admissible interval");
  }
  const int dd = ws.d_space.dim();
  const Matrix r = restricted_root_matrix(ws, d_sub, ks_op, tol);
  if (dd > 0) {
    const Matrix r_low = restricted_root_matrix(ws, psi_dom, ks_op, tol);
    const Matrix r_full = restricted_root_matrix(ws, ks_op.domain, ks_op, tol);
    const auto graph_of = [&](const Subspace& dom, const Matrix& m) {
      Matrix gens(ws.n + dd, dom.dim());
      gens.topRows(ws.n) = dom.basis;
      gens.bottomRows(dd) = m;
      return make_relation(ws.n, dd, gens, tol);
    };
    const LinearRelation rel = graph_of(d_sub, r);
    if (!relation_leq(graph_of(psi_dom, r_low), rel, tol) ||
        !relation_leq(rel, graph_of(ks_op.domain, r_full), tol)) {
      throw std::invalid_argument(
          "extremal_from_domain: restriction not between the endpoint operators");
    }
  }

  const Matrix m = r.adjoint() * plus_i_times(ws.c) * r;
  const LinearRelation result = relation_of_form(SesquilinearForm{d_sub, m}, tol);
  if (!relation_leq(add_relations(ws.s1.h, ws.s2.h, tol), result, tol)) {
    throw ConsistencyError("extremal_from_domain: result does not extend the sum");
  }
  if (!is_maximal_sectorial(result, tol)) {
    throw ConsistencyError("extremal_from_domain: result is not maximal sectorial");
  }
  return result;
}

}  // namespace sectorial
