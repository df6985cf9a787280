// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/relation.hpp"

#include <Eigen/SVD>

namespace sectorial {

namespace {

// Null space of m (right singular vectors with negligible singular value).
Matrix null_space(const Matrix& m, const ToleranceConfig& tol) {
  if (m.cols() == 0) return Matrix::Zero(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) >= tol.rank_rel_tol * smax) ++rank;
    }
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

LinearRelation make_relation(int dim_h, int dim_k, const Matrix& generators,
                             const ToleranceConfig& tol) {
  if (dim_h <= 0 || dim_k <= 0) {
    throw std::invalid_argument("make_relation: space dimensions must be positive");
  }
  if (generators.rows() != dim_h + dim_k) {
    throw std::invalid_argument("make_relation: generators need dim_h + dim_k rows");
  }
  return LinearRelation{dim_h, dim_k, orthonormalize(generators, tol)};
}

LinearRelation identity_relation(int n) {
  Matrix gens(2 * n, n);
  gens << Matrix::Identity(n, n), Matrix::Identity(n, n);
  return make_relation(n, n, gens);
}

LinearRelation relation_of_matrix(const Matrix& m, const ToleranceConfig& tol) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  Matrix gens(cols + rows, cols);
  gens << Matrix::Identity(cols, cols), m;
  return make_relation(cols, rows, gens, tol);
}

RelationParts parts(const LinearRelation& t, const ToleranceConfig& tol) {
  const Matrix gh = t.input_rows();
  const Matrix gk = t.output_rows();
  RelationParts p;
  p.dom = orthonormalize(gh, tol);
  p.ran = orthonormalize(gk, tol);
  // mul = output components of graph vectors with vanishing input, and dually.
  p.mul = orthonormalize(gk * null_space(gh, tol), tol);
  p.ker = orthonormalize(gh * null_space(gk, tol), tol);
  if (p.dom.dim() + p.mul.dim() != t.graph_dim()) {
    throw ConsistencyError("parts: dim(graph) != dim(dom) + dim(mul)");
  }
  return p;
}

LinearRelation adjoint(const LinearRelation& t, const ToleranceConfig& tol) {
  // (k, h) is in the adjoint iff (k, f') = (h, f) for all (f, f') in t, i.e.
  // iff (k, h) is orthogonal to every (f', -f) in the product space K + H.
  Matrix flipped(t.dim_k + t.dim_h, t.graph_dim());
  flipped.topRows(t.dim_k) = t.output_rows();
  flipped.bottomRows(t.dim_h) = -t.input_rows();
  Subspace g = complement(orthonormalize(flipped, tol));
  return LinearRelation{t.dim_k, t.dim_h, std::move(g)};
}

OperatorOnSubspace operator_part(const LinearRelation& t, const ToleranceConfig& tol) {
  const RelationParts p = parts(t, tol);
  const Matrix gh = t.input_rows();
  const Matrix gk = t.output_rows();
  // Any graph preimage of a domain vector works: the mul-directed ambiguity
  // is removed by the projection onto (mul t)^perp.
  const Matrix proj = Matrix::Identity(t.dim_k, t.dim_k) - p.mul.projector();
  OperatorOnSubspace op;
  op.domain = p.dom;
  op.codomain_dim = t.dim_k;
  op.matrix = proj * gk * pseudo_inverse(gh, tol) * p.dom.basis;
  // Cross-check single-valuedness: the graph of the operator must sit inside t.
  Matrix probe(t.dim_h + t.dim_k, p.dom.dim());
  probe << p.dom.basis, op.matrix;
  for (Eigen::Index j = 0; j < probe.cols(); ++j) {
    const Vector v = probe.col(j) / probe.col(j).norm();
    const Vector res = v - t.graph.projector() * v;
    if (res.norm() > 1e3 * tol.subspace_eq_tol) {
      throw ConsistencyError("operator_part: P t is not single-valued on dom t");
    }
  }
  return op;
}

LinearRelation to_relation(const OperatorOnSubspace& op, const ToleranceConfig& tol) {
  const int d = op.domain.dim();
  Matrix gens(op.domain.ambient_dim + op.codomain_dim, d);
  gens.topRows(op.domain.ambient_dim) = op.domain.basis;
  gens.bottomRows(op.codomain_dim) = op.matrix;
  return make_relation(op.domain.ambient_dim, op.codomain_dim, gens, tol);
}

LinearRelation compose(const LinearRelation& s, const LinearRelation& t,
                       const ToleranceConfig& tol) {
  if (t.dim_k != s.dim_h) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  const int h = t.dim_h, k = t.dim_k, g = s.dim_k;
  // Joint space H + K + G. A = {(x, y, z) : (x, y) in t}, B = {(x, y, z) :
  // (y, z) in s}. Their meet carries the pairs linked by a common middle
  // element; dropping the middle coordinate yields the product graph.
  Matrix a(h + k + g, t.graph_dim() + g);
  a.setZero();
  a.block(0, 0, h + k, t.graph_dim()) = t.graph.basis;
  a.block(h + k, t.graph_dim(), g, g) = Matrix::Identity(g, g);
  Matrix b(h + k + g, s.graph_dim() + h);
  b.setZero();
  b.block(h, 0, k + g, s.graph_dim()) = s.graph.basis;
  b.block(0, s.graph_dim(), h, h) = Matrix::Identity(h, h);
  const Subspace m = meet(orthonormalize(a, tol), orthonormalize(b, tol), tol);
  Matrix gens(h + g, m.dim());
  gens.topRows(h) = m.basis.topRows(h);
  gens.bottomRows(g) = m.basis.bottomRows(g);
  return make_relation(h, g, gens, tol);
}

LinearRelation add_relations(const LinearRelation& h1, const LinearRelation& h2,
                             const ToleranceConfig& tol) {
  if (h1.dim_h != h2.dim_h || h1.dim_k != h2.dim_k) {
    throw std::invalid_argument("add_relations: space dimensions do not match");
  }
  const int h = h1.dim_h, k = h1.dim_k;
  // Meet of {(x, y1, y2) : (x, y1) in h1} and {(x, y1, y2) : (x, y2) in h2},
  // then the image under (x, y1, y2) -> (x, y1 + y2).
  Matrix a(h + 2 * k, h1.graph_dim() + k);
  a.setZero();
  a.block(0, 0, h + k, h1.graph_dim()) = h1.graph.basis;
  a.block(h + k, h1.graph_dim(), k, k) = Matrix::Identity(k, k);
  Matrix b(h + 2 * k, h2.graph_dim() + k);
  b.setZero();
  b.block(0, 0, h, h2.graph_dim()) = h2.input_rows();
  b.block(h + k, 0, k, h2.graph_dim()) = h2.output_rows();
  b.block(h, h2.graph_dim(), k, k) = Matrix::Identity(k, k);
  const Subspace m = meet(orthonormalize(a, tol), orthonormalize(b, tol), tol);
  Matrix gens(h + k, m.dim());
  gens.topRows(h) = m.basis.topRows(h);
  gens.bottomRows(k) = m.basis.middleRows(h, k) + m.basis.bottomRows(k);
  LinearRelation sum = make_relation(h, k, gens, tol);

  const RelationParts p1 = parts(h1, tol), p2 = parts(h2, tol), ps = parts(sum, tol);
  if (gap(ps.dom, meet(p1.dom, p2.dom, tol)) > tol.subspace_eq_tol ||
      gap(ps.mul, join(p1.mul, p2.mul, tol)) > tol.subspace_eq_tol) {
    throw ConsistencyError("add_relations: dom/mul bookkeeping failed");
  }
  return sum;
}

LinearRelation apply_left(const Matrix& b, const LinearRelation& t,
                          const ToleranceConfig& tol) {
  if (b.rows() != t.dim_k || b.cols() != t.dim_k) {
    throw std::invalid_argument("apply_left: operator must act on the output space");
  }
  Matrix gens(t.dim_h + t.dim_k, t.graph_dim());
  gens.topRows(t.dim_h) = t.input_rows();
  gens.bottomRows(t.dim_k) = b * t.output_rows();
  return make_relation(t.dim_h, t.dim_k, gens, tol);
}

bool relation_leq(const LinearRelation& t1, const LinearRelation& t2,
                  const ToleranceConfig& tol) {
  if (t1.dim_h != t2.dim_h || t1.dim_k != t2.dim_k) {
    throw std::invalid_argument("relation_leq: space dimensions do not match");
  }
  return subspace_leq(t1.graph, t2.graph, tol);
}

bool relation_eq(const LinearRelation& t1, const LinearRelation& t2,
                 const ToleranceConfig& tol) {
  return relation_gap(t1, t2) <= tol.subspace_eq_tol;
}

double relation_gap(const LinearRelation& t1, const LinearRelation& t2) {
  if (t1.dim_h != t2.dim_h || t1.dim_k != t2.dim_k) {
    throw std::invalid_argument("relation_gap: space dimensions do not match");
  }
  return gap(t1.graph, t2.graph);
}

}  // namespace sectorial
