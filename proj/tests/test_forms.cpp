// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sectorial/forms.hpp"
#include "sectorial/instance.hpp"

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

LinearRelation random_maximal_sectorial(SeededRng& rng, int n) {
  const InstanceDocument doc = random_instance("sum", n, 0, 0, 4.0, rng.next_u64());
  return summand_relation(doc.summands[0], n);
}

}  // namespace

TEST_CASE("graph_pairing of a scalar graph") {
  const Complex z(1.5, 0.5);
  const Matrix n = graph_pairing(scalar_graph(z));
  // Normalizing (1, z) gives N = z / (1 + |z|^2).
  CHECK(std::abs(n(0, 0) - z / (1.0 + std::norm(z))) < 1e-13);

  CHECK(op_norm(graph_pairing(mul_only(1))) < 1e-14);
}

TEST_CASE("graph_pairing is congruent to a Hermitian operator") {
  Matrix a(2, 2);
  a << 2.0, 0.0, 0.0, -3.0;
  const Matrix n = graph_pairing(relation_of_matrix(a));
  CHECK(op_norm(n - n.adjoint()) < 1e-13);
  // Diagonal case by hand: the pairing spectrum is {a_j / (1 + a_j^2)},
  // independent of how the graph basis is ordered.
  Eigen::SelfAdjointEigenSolver<Matrix> es(n);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-3.0 / 10.0).epsilon(1e-13));
  CHECK(es.eigenvalues()(1) == doctest::Approx(2.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("sectoriality verdicts on pinned relations") {
  const SectorialityVerdict v = sectoriality(scalar_graph(Complex(1.5, 0.5)));
  CHECK(v.is_accretive);
  CHECK(v.is_sectorial);
  CHECK(v.is_maximal);
  CHECK(v.tan_alpha.value() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const SectorialityVerdict neg = sectoriality(scalar_graph(-1.0));
  CHECK_FALSE(neg.is_accretive);
  CHECK_FALSE(neg.is_sectorial);

  const SectorialityVerdict pure = sectoriality(mul_only(2));
  CHECK(pure.is_sectorial);
  CHECK(pure.tan_alpha.value() == doctest::Approx(0.0));
  CHECK(pure.is_maximal);

  // The zero relation is sectorial but has proper sectorial extensions.
  const LinearRelation zero = make_relation(1, 1, Matrix::Zero(2, 0));
  const SectorialityVerdict vz = sectoriality(zero);
  CHECK(vz.is_sectorial);
  CHECK_FALSE(vz.is_maximal);
}

TEST_CASE("form_of on pinned relations") {
  Matrix a(2, 2);
  a << Complex(2, 0), Complex(0, 1), Complex(0, 1), Complex(3, 0);
  // Everywhere-defined operator: the ambient form operator is A itself.
  const SesquilinearForm f = form_of(relation_of_matrix(a));
  CHECK(f.domain.dim() == 2);
  CHECK(op_norm(f.ambient_operator() - a) < 1e-12);

  Matrix g1(4, 2);
  g1 << Complex(1, 0), Complex(0, 0),
        Complex(0, 0), Complex(0, 0),
        Complex(1, 0), Complex(0, 0),
        Complex(0, 0), Complex(1, 0);
  const SesquilinearForm fp = form_of(make_relation(2, 2, g1));
  CHECK(fp.domain.dim() == 1);
  CHECK(std::abs(fp.matrix(0, 0) - Complex(1, 0)) < 1e-12);

  const SesquilinearForm fm = form_of(mul_only(3));
  CHECK(fm.domain.dim() == 0);

  CHECK_THROWS_AS(form_of(scalar_graph(-1.0)), std::invalid_argument);
}

TEST_CASE("relation_of_form on pinned forms") {
  Matrix two(1, 1);
  two << 2.0;
  CHECK(relation_eq(relation_of_form(SesquilinearForm{Subspace::full(1), two}),
                    scalar_graph(2.0)));

  const LinearRelation empty_domain =
      relation_of_form(SesquilinearForm{Subspace::zero(1), Matrix::Zero(0, 0)});
  CHECK(relation_eq(empty_domain, mul_only(1)));

  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  Matrix one(1, 1);
  one << 1.0;
  const LinearRelation rel = relation_of_form(SesquilinearForm{orthonormalize(e1), one});
  Matrix expected(4, 2);
  expected << Complex(1, 0), Complex(0, 0),
              Complex(0, 0), Complex(0, 0),
              Complex(1, 0), Complex(0, 0),
              Complex(0, 0), Complex(1, 0);
  CHECK(relation_eq(rel, make_relation(2, 2, expected)));

  Matrix negative(1, 1);
  negative << -1.0;
  CHECK_THROWS_AS(relation_of_form(SesquilinearForm{Subspace::full(1), negative}),
                  std::invalid_argument);
}

TEST_CASE("real_part_relation on pinned relations") {
  CHECK(relation_eq(real_part_relation(scalar_graph(Complex(1.5, 0.5))), scalar_graph(1.5)));

  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const LinearRelation h = relation_of_matrix(a);
  CHECK(relation_eq(real_part_relation(h), h));

  CHECK(relation_eq(real_part_relation(mul_only(2)), mul_only(2)));
}

TEST_CASE("second representation on pinned relations") {
  const SecondRepresentation rep = second_representation(scalar_graph(Complex(1.5, 0.5)));
  CHECK(std::abs(rep.s_half.matrix(0, 0) - Complex(std::sqrt(1.5), 0)) < 1e-12);
  CHECK(std::abs(rep.g(0, 0) - Complex(1.0 / 3.0, 0)) < 1e-12);
  CHECK(rep.tan_alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const SecondRepresentation rep_sa = second_representation(relation_of_matrix(a));
  CHECK(op_norm(rep_sa.g) < 1e-12);

  // Form m_r + i m_r: G is the projector onto ran m_r and tan alpha = 1.
  Matrix m_r(2, 2);
  m_r << 1.0, 0.0, 0.0, 0.0;
  const LinearRelation h = relation_of_form(
      SesquilinearForm{Subspace::full(2), m_r + Complex(0, 1) * m_r});
  const SecondRepresentation rep_g = second_representation(h);
  CHECK(rep_g.tan_alpha == doctest::Approx(1.0).epsilon(1e-10));
  const Matrix g_ambient = rep_g.s_half.domain.basis * rep_g.g *
                           rep_g.s_half.domain.basis.adjoint();
  CHECK(op_norm(g_ambient - m_r) < 1e-10);
}

TEST_CASE("reconstruct_second_rep roundtrip on pinned relations") {
  for (const LinearRelation& h :
       {scalar_graph(Complex(1.5, 0.5)), scalar_graph(2.0), mul_only(2)}) {
    const LinearRelation back = reconstruct_second_rep(second_representation(h));
    CHECK(relation_gap(back, h) < 1e-10);
  }
}

TEST_CASE("representation roundtrips on random maximal sectorial relations") {
  SeededRng rng(99);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = rng.uniform_int(1, 6);
    const LinearRelation h = random_maximal_sectorial(rng, n);
    REQUIRE(is_maximal_sectorial(h));

    const SesquilinearForm f = form_of(h);
    CHECK(relation_gap(relation_of_form(f), h) < 1e-8);

    const SesquilinearForm f2 = form_of(relation_of_form(f));
    CHECK(op_norm(f2.ambient_operator() - f.ambient_operator()) <
          1e-8 * std::max(1.0, op_norm(f.ambient_operator())));

    const RelationParts p = parts(h);
    CHECK(gap(p.mul, complement(p.dom)) < 1e-8);
    CHECK(gap(parts(real_part_relation(h)).mul, p.mul) < 1e-8);

    const SectorialityVerdict v = sectoriality(h);
    CHECK(std::abs(pencil_tan_alpha(f.real_part(), f.imag_part()) - v.tan_alpha.value()) < 1e-8);

    const LinearRelation reconstructed = reconstruct_second_rep(second_representation(h));
    CHECK(relation_gap(reconstructed, h) < 1e-8);

    // Output rescaling by a positive constant preserves the verdict data.
    const LinearRelation scaled = apply_left(3.0 * Matrix::Identity(n, n), h);
    const SectorialityVerdict vs = sectoriality(scaled);
    CHECK(vs.is_sectorial == v.is_sectorial);
    CHECK(vs.is_maximal == v.is_maximal);
    CHECK(std::abs(vs.tan_alpha.value() - v.tan_alpha.value()) < 1e-8);
  }
}
