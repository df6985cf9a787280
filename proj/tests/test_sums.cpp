// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sectorial/instance.hpp"
#include "sectorial/sum_extensions.hpp"

using namespace sectorial;

namespace {

LinearRelation scalar_graph(Complex a) {
  Matrix gens(2, 1);
  gens << Complex(1, 0), a;
  return make_relation(1, 1, gens);
}

LinearRelation mul_only(int n) {
  Matrix gens(2 * n, n);
  gens.setZero();
  gens.bottomRows(n) = Matrix::Identity(n, n);
  return make_relation(n, n, gens);
}

LinearRelation restricted_identity() {
  // {((x,0), (x,m))} on C^2: the operator 1 on span e1 with mul span e2.
  Matrix gens(4, 2);
  gens << Complex(1, 0), Complex(0, 0),
          Complex(0, 0), Complex(0, 0),
          Complex(1, 0), Complex(0, 0),
          Complex(0, 0), Complex(1, 0);
  return make_relation(2, 2, gens);
}

}  // namespace

TEST_CASE("prepare_summand on pinned relations") {
  const SummandData s = prepare_summand(scalar_graph(Complex(1.5, 0.5)));
  CHECK(relation_eq(s.a, scalar_graph(1.5)));
  CHECK(std::abs(s.a_s_half.matrix(0, 0) - Complex(std::sqrt(1.5), 0)) < 1e-12);
  CHECK(std::abs(s.b_small(0, 0) - Complex(1.0 / 3.0, 0)) < 1e-12);

  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const SummandData sa = prepare_summand(relation_of_matrix(a));
  CHECK(op_norm(sa.b_small) < 1e-12);
  CHECK(relation_eq(sa.a, relation_of_matrix(a)));

  const SummandData sr = prepare_summand(restricted_identity());
  CHECK(relation_eq(sr.a, restricted_identity()));
  CHECK(sr.dom.dim() == 1);
  CHECK(relation_eq(sr.a_half, restricted_identity()));
}

TEST_CASE("scalar pair workspace and extensions") {
  const SummandData s1 = prepare_summand(scalar_graph(1.0));
  const SummandData s2 = prepare_summand(scalar_graph(Complex(1.5, 0.5)));
  const SumExtensionWorkspace ws = build_workspace(s1, s2);

  // Psi h = (h, sqrt(1.5) h), so e is the line through (1, sqrt(1.5)).
  Vector dir(2);
  dir << Complex(1, 0), Complex(std::sqrt(1.5), 0);
  CHECK(gap(ws.e_space, orthonormalize(dir)) < 1e-12);
  CHECK(gap(ws.e_space, ws.f_space) < 1e-12);

  const LinearRelation expected = scalar_graph(Complex(2.5, 0.5));
  const ExtensionResult fr = friedrichs_extension(ws);
  CHECK(fr.routes_gap < 1e-10);
  CHECK(relation_gap(fr.relation, expected) < 1e-10);

  const KreinResult kr = krein_extension(ws);
  CHECK(kr.routes_gap < 1e-10);
  CHECK(relation_gap(kr.relation, expected) < 1e-10);
  CHECK(kr.form.domain.dim() == 1);
  Matrix expected_form(1, 1);
  expected_form << Complex(2.5, 0.5);
  CHECK(op_norm(kr.form.ambient_operator() - expected_form) < 1e-10);

  CHECK(relation_gap(form_sum_extension(ws), expected) < 1e-10);
  CHECK(is_form_sum_extremal(ws));
}

TEST_CASE("degenerate purely multivalued pair") {
  const SummandData s1 = prepare_summand(mul_only(1));
  const SummandData s2 = prepare_summand(mul_only(1));
  const SumExtensionWorkspace ws = build_workspace(s1, s2);
  CHECK(parts(ws.psi).dom.dim() == 0);
  CHECK(ws.e_space.dim() == 0);

  const LinearRelation expected = mul_only(1);
  CHECK(relation_gap(friedrichs_extension(ws).relation, expected) < 1e-12);
  CHECK(relation_gap(krein_extension(ws).relation, expected) < 1e-12);
  CHECK(relation_gap(form_sum_extension(ws), expected) < 1e-12);
  CHECK(krein_extension(ws).form.domain.dim() == 0);
  CHECK(is_form_sum_extremal(ws));
}

TEST_CASE("mixed mul pair on C^2") {
  const SummandData s1 = prepare_summand(restricted_identity());
  const SummandData s2 = prepare_summand(identity_relation(2));
  const SumExtensionWorkspace ws = build_workspace(s1, s2);

  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  CHECK(gap(parts(ws.psi).dom, orthonormalize(e1)) < 1e-12);

  // {((x,0),(2x,m))}: the forms add on span e1 and the mul part survives.
  Matrix expected_gens(4, 2);
  expected_gens << Complex(1, 0), Complex(0, 0),
                   Complex(0, 0), Complex(0, 0),
                   Complex(2, 0), Complex(0, 0),
                   Complex(0, 0), Complex(1, 0);
  const LinearRelation expected = make_relation(2, 2, expected_gens);

  CHECK(relation_gap(friedrichs_extension(ws).relation, expected) < 1e-10);
  const KreinResult kr = krein_extension(ws);
  CHECK(relation_gap(kr.relation, expected) < 1e-10);
  CHECK(kr.form.domain.dim() == 1);
  CHECK(std::abs(kr.form.matrix(0, 0) - Complex(2, 0)) < 1e-10);
  CHECK(relation_gap(form_sum_extension(ws), expected) < 1e-10);
  CHECK(is_form_sum_extremal(ws));

  const LinearRelation sum = add_relations(s1.h, s2.h);
  CHECK(relation_gap(sum, expected) < 1e-10);
}

TEST_CASE("extremal extensions coincide across the admissible interval") {
  const SummandData s1 = prepare_summand(restricted_identity());
  const SummandData s2 = prepare_summand(identity_relation(2));
  const SumExtensionWorkspace ws = build_workspace(s1, s2);

  const Subspace psi_dom = parts(ws.psi).dom;
  const Subspace ks_dom = operator_part(ws.k_star).domain;
  const LinearRelation from_psi = extremal_from_domain(ws, psi_dom);
  const LinearRelation from_kstar = extremal_from_domain(ws, ks_dom);
  CHECK(relation_gap(from_psi, friedrichs_extension(ws).relation) < 1e-10);
  CHECK(relation_gap(from_kstar, krein_extension(ws).relation) < 1e-10);
  CHECK(relation_gap(from_psi, from_kstar) < 1e-10);

  CHECK_THROWS_AS(extremal_from_domain(ws, Subspace::full(2)), std::invalid_argument);
}

TEST_CASE("random pairs: inclusions and coincidence of all extensions") {
  SeededRng rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = rng.uniform_int(1, 4);
    const InstanceDocument doc = random_instance("sum", n, 0, 0, 5.0, rng.next_u64());
    const LinearRelation h1 = summand_relation(doc.summands[0], n);
    const LinearRelation h2 = summand_relation(doc.summands[1], n);
    const SumExtensionWorkspace ws = build_workspace(prepare_summand(h1), prepare_summand(h2));

    const LinearRelation sum = add_relations(h1, h2);
    REQUIRE(is_maximal_sectorial(sum));

    const ExtensionResult fr = friedrichs_extension(ws);
    const KreinResult kr = krein_extension(ws);
    const LinearRelation fs = form_sum_extension(ws);
    CHECK(fr.routes_gap < 1e-8);
    CHECK(kr.routes_gap < 1e-8);
    CHECK(relation_gap(fr.relation, sum) < 1e-7);
    CHECK(relation_gap(kr.relation, sum) < 1e-7);
    CHECK(relation_gap(fs, sum) < 1e-7);
    CHECK(gap(ws.e_space, ws.f_space) < 1e-8);
    CHECK(is_form_sum_extremal(ws));
  }
}
