// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sectorial/subspace.hpp"

namespace sectorial {

/// A linear relation from C^dim_h to C^dim_k, i.e. a subspace of the product
/// space regarded as a graph. Coordinates 0..dim_h-1 hold the input
/// component, the rest the output component. Relations may be multivalued
/// (nontrivial mul) and non-densely defined; both cases are routine here.
struct LinearRelation {
  int dim_h = 0;
  int dim_k = 0;
  Subspace graph;  // ambient_dim == dim_h + dim_k

  int graph_dim() const { return graph.dim(); }
  Matrix input_rows() const { return graph.basis.topRows(dim_h); }
  Matrix output_rows() const { return graph.basis.bottomRows(dim_k); }
};

/// dom/ran/ker/mul of a relation, all as subspaces of the respective side.
struct RelationParts {
  Subspace dom;  // in C^dim_h
  Subspace ran;  // in C^dim_k
  Subspace ker;  // in C^dim_h
  Subspace mul;  // in C^dim_k
};

/// A single-valued linear map defined on a subspace of C^dim_h. `matrix` maps
/// domain-basis coordinates to ambient codomain vectors
/// (codomain_dim x domain.dim()).
struct OperatorOnSubspace {
  Subspace domain;
  int codomain_dim = 0;
  Matrix matrix;

  Vector apply(const Vector& h) const { return matrix * (domain.basis.adjoint() * h); }
};

LinearRelation make_relation(int dim_h, int dim_k, const Matrix& generators,
                             const ToleranceConfig& tol = {});

/// Identity operator graph on C^n.
LinearRelation identity_relation(int n);

/// Graph of an everywhere-defined matrix m : C^cols -> C^rows.
LinearRelation relation_of_matrix(const Matrix& m, const ToleranceConfig& tol = {});

RelationParts parts(const LinearRelation& t, const ToleranceConfig& tol = {});

/// Adjoint relation: all (k, h) with (h, f) = (k, f') for every (f, f') in t.
/// Realized as the orthogonal complement of the flipped graph (f', -f).
LinearRelation adjoint(const LinearRelation& t, const ToleranceConfig& tol = {});

/// Orthogonal operator part: P t with P the projector onto (mul t)^perp. The
/// codomain is kept as all of C^dim_k; callers may compress it afterwards.
OperatorOnSubspace operator_part(const LinearRelation& t, const ToleranceConfig& tol = {});

/// Graph of an operator on a subspace, viewed as a relation.
LinearRelation to_relation(const OperatorOnSubspace& op, const ToleranceConfig& tol = {});

/// Product s(t(.)): first t, then s. Requires t.dim_k == s.dim_h. Built from
/// subspace arithmetic in the joint space H + K + G, never from least squares.
LinearRelation compose(const LinearRelation& s, const LinearRelation& t,
                       const ToleranceConfig& tol = {});

/// Componentwise sum {(h, h1' + h2')}. Asserts the laws
/// dom = dom1 meet dom2 and mul = mul1 join mul2 on every call.
LinearRelation add_relations(const LinearRelation& h1, const LinearRelation& h2,
                             const ToleranceConfig& tol = {});

/// {(h, b f') : (h, f') in t} for a bounded b on the output space.
LinearRelation apply_left(const Matrix& b, const LinearRelation& t,
                          const ToleranceConfig& tol = {});

bool relation_leq(const LinearRelation& t1, const LinearRelation& t2,
                  const ToleranceConfig& tol = {});
bool relation_eq(const LinearRelation& t1, const LinearRelation& t2,
                 const ToleranceConfig& tol = {});

/// gap between the graphs; the equality metric for relations.
double relation_gap(const LinearRelation& t1, const LinearRelation& t2);

}  // namespace sectorial
