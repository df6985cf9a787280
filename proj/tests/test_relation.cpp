// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "sectorial/instance.hpp"
#include "sectorial/relation.hpp"

using namespace sectorial;

namespace {

LinearRelation scalar_graph(Complex a) {
  Matrix gens(2, 1);
  gens << Complex(1, 0), a;
  return make_relation(1, 1, gens);
}

// The worked 1-D instance used throughout: T = {(x, (x, m))} in C x C^2 with
// dom = C, ran = C^2, mul = span e2.
LinearRelation pinned_relation() {
  Matrix gens(3, 2);
  gens << Complex(1, 0), Complex(0, 0),
          Complex(1, 0), Complex(0, 0),
          Complex(0, 0), Complex(1, 0);
  return make_relation(1, 2, gens);
}

// Composition oracle independent of the subspace lattice: eliminate the
// middle element by a null-space solve of Gk_t c_t = Gh_s c_s.
LinearRelation compose_oracle(const LinearRelation& s, const LinearRelation& t) {
  const int gt = t.graph_dim(), gs = s.graph_dim();
  Matrix link(t.dim_k, gt + gs);
  link << t.output_rows(), -s.input_rows();
  Matrix pairs;
  if (gt + gs == 0) {
    pairs = Matrix::Zero(0, 0);
  } else {
    Eigen::JacobiSVD<Matrix> svd(link, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (smax > 0.0 && sigma(i) >= 1e-10 * smax) ++rank;
    }
    pairs = svd.matrixV().rightCols(gt + gs - rank);
  }
  Matrix gens(t.dim_h + s.dim_k, pairs.cols());
  gens.topRows(t.dim_h) = t.input_rows() * pairs.topRows(gt);
  gens.bottomRows(s.dim_k) = s.output_rows() * pairs.bottomRows(gs);
  return make_relation(t.dim_h, s.dim_k, gens);
}

LinearRelation random_relation(SeededRng& rng, int dim_h, int dim_k) {
  const int g = rng.uniform_int(0, dim_h + dim_k);
  return make_relation(dim_h, dim_k, rng.gaussian_matrix(dim_h + dim_k, g));
}

}  // namespace

TEST_CASE("make_relation basics") {
  Matrix gens(2, 1);
  gens << Complex(1, 0), Complex(2, 0);
  const LinearRelation t = make_relation(1, 1, gens);
  CHECK(t.graph_dim() == 1);
  CHECK(relation_eq(t, scalar_graph(2.0)));

  const LinearRelation zero = make_relation(2, 2, Matrix::Zero(4, 0));
  CHECK(zero.graph_dim() == 0);

  CHECK_THROWS_AS(make_relation(1, 1, Matrix::Zero(3, 1)), std::invalid_argument);
}

TEST_CASE("parts of the pinned relation") {
  const RelationParts p = parts(pinned_relation());
  CHECK(p.dom.dim() == 1);
  CHECK(p.ran.dim() == 2);
  CHECK(p.ker.dim() == 0);
  CHECK(p.mul.dim() == 1);
  Vector e2 = Vector::Zero(2);
  e2(1) = 1.0;
  CHECK(gap(p.mul, orthonormalize(e2)) < 1e-12);
}

TEST_CASE("parts of a purely multivalued relation") {
  Matrix gens(2, 1);
  gens << Complex(0, 0), Complex(1, 0);
  const RelationParts p = parts(make_relation(1, 1, gens));
  CHECK(p.dom.dim() == 0);
  CHECK(p.mul.dim() == 1);
}

TEST_CASE("adjoint on pinned cases") {
  CHECK(relation_eq(adjoint(scalar_graph(2.0)), scalar_graph(2.0)));

  // Solving (h', x) = ((k1, k2), (x, y)) for all x, y forces k2 = 0, h' = k1.
  const LinearRelation tstar = adjoint(pinned_relation());
  Matrix expected(3, 1);
  expected << Complex(1, 0), Complex(0, 0), Complex(1, 0);
  CHECK(relation_eq(tstar, make_relation(2, 1, expected)));

  Matrix mul_only(2, 1);
  mul_only << Complex(0, 0), Complex(1, 0);
  const LinearRelation adj = adjoint(make_relation(1, 1, mul_only));
  const RelationParts p = parts(adj);
  CHECK(p.dom.dim() == 0);
  CHECK(p.mul.dim() == 1);
}

TEST_CASE("operator_part on pinned cases") {
  const OperatorOnSubspace op2 = operator_part(scalar_graph(2.0));
  CHECK(op2.matrix.rows() == 1);
  CHECK(std::abs(op2.matrix(0, 0) - Complex(2, 0)) < 1e-12);

  const OperatorOnSubspace op = operator_part(pinned_relation());
  // 1 -> (1, 0) after projecting out mul = span e2.
  Vector image = op.apply(Vector::Ones(1));
  CHECK(std::abs(image(0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(image(1)) < 1e-12);

  CHECK(relation_leq(to_relation(op), pinned_relation()));
}

TEST_CASE("compose on pinned cases") {
  CHECK(relation_eq(compose(scalar_graph(3.0), scalar_graph(2.0)), scalar_graph(6.0)));

  // T* T for the pinned instance: the free mul coordinate is annihilated by
  // dom T* and the elimination leaves the identity.
  const LinearRelation t = pinned_relation();
  CHECK(relation_eq(compose(adjoint(t), t), scalar_graph(1.0)));

  const LinearRelation zero = make_relation(1, 1, Matrix::Zero(2, 0));
  const LinearRelation anything = scalar_graph(5.0);
  CHECK(compose(anything, zero).graph_dim() == 0);
}

TEST_CASE("add_relations on pinned cases") {
  CHECK(relation_eq(add_relations(scalar_graph(1.0), scalar_graph(2.0)), scalar_graph(3.0)));

  // {((x,0),(x,m))} + identity = {((x,0),(2x,m))}.
  Matrix g1(4, 2);
  g1 << Complex(1, 0), Complex(0, 0),
        Complex(0, 0), Complex(0, 0),
        Complex(1, 0), Complex(0, 0),
        Complex(0, 0), Complex(1, 0);
  const LinearRelation h1 = make_relation(2, 2, g1);
  const LinearRelation sum = add_relations(h1, identity_relation(2));
  Matrix expected(4, 2);
  expected << Complex(1, 0), Complex(0, 0),
              Complex(0, 0), Complex(0, 0),
              Complex(2, 0), Complex(0, 0),
              Complex(0, 0), Complex(1, 0);
  CHECK(relation_eq(sum, make_relation(2, 2, expected)));

  // Adding the everywhere-defined zero operator changes nothing.
  const LinearRelation zero_op = relation_of_matrix(Matrix::Zero(2, 2));
  CHECK(relation_eq(add_relations(h1, zero_op), h1));
}

TEST_CASE("apply_left on pinned cases") {
  const LinearRelation t = pinned_relation();
  CHECK(relation_eq(apply_left(Matrix::Identity(2, 2), t), t));

  const LinearRelation killed = apply_left(Matrix::Zero(2, 2), t);
  const RelationParts p = parts(killed);
  CHECK(p.dom.dim() == 1);
  CHECK(p.ran.dim() == 0);

  Matrix b(2, 2);
  b << 1.0, 1.0, 1.0, 1.0;
  const Matrix ib = Matrix::Identity(2, 2) + Complex(0, 1) * b;
  Matrix expected(3, 2);
  expected << Complex(1, 0), Complex(0, 0),
              Complex(1, 1), Complex(0, 1),
              Complex(0, 1), Complex(1, 1);
  CHECK(relation_eq(apply_left(ib, t), make_relation(1, 2, expected)));
}

TEST_CASE("relation ordering") {
  const LinearRelation t = pinned_relation();
  CHECK(relation_leq(t, t));
  CHECK_FALSE(relation_leq(scalar_graph(2.0), scalar_graph(3.0)));
  CHECK(relation_leq(to_relation(operator_part(t)), t));
}

TEST_CASE("relation algebra properties on random instances") {
  SeededRng rng(424242);
  for (int rep = 0; rep < 50; ++rep) {
    const int h = rng.uniform_int(1, 5);
    const int k = rng.uniform_int(1, 5);
    const LinearRelation t = random_relation(rng, h, k);

    const LinearRelation tstar = adjoint(t);
    CHECK(relation_gap(adjoint(tstar), t) < 1e-10);
    CHECK(t.graph_dim() + tstar.graph_dim() == h + k);

    const RelationParts p = parts(t);
    const RelationParts pstar = parts(tstar);
    CHECK(gap(pstar.mul, complement(p.dom)) < 1e-9);
    CHECK(gap(pstar.ker, complement(p.ran)) < 1e-9);

    // Graph of the operator part sits inside the relation.
    CHECK(relation_leq(to_relation(operator_part(t)), t));

    // Oracle cross-check for composition plus associativity.
    const int g = rng.uniform_int(1, 5);
    const LinearRelation s = random_relation(rng, k, g);
    CHECK(relation_gap(compose(s, t), compose_oracle(s, t)) < 1e-9);

    const int f = rng.uniform_int(1, 5);
    const LinearRelation r = random_relation(rng, g, f);
    CHECK(relation_gap(compose(compose(r, s), t), compose(r, compose(s, t))) < 1e-9);
  }
}

TEST_CASE("operator round trip through relations") {
  SeededRng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int h = rng.uniform_int(1, 5);
    const int k = rng.uniform_int(1, 5);
    const LinearRelation t = random_relation(rng, h, k);
    const OperatorOnSubspace op = operator_part(t);
    const OperatorOnSubspace back = operator_part(to_relation(op));
    CHECK(gap(op.domain, back.domain) < 1e-9);
    CHECK(op_norm(op.matrix * (op.domain.basis.adjoint() * back.domain.basis) - back.matrix) <
          1e-9 * std::max(1.0, op_norm(op.matrix)));
  }
}
