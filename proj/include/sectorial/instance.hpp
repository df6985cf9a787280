// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectorial/forms.hpp"

namespace sectorial {

/// One summand of a "sum" instance: either graph generators of a maximal
/// sectorial relation, or a sectorial form (domain generators plus matrix).
struct SummandSpec {
  std::optional<Matrix> graph_generators;  // 2n x g
  std::optional<Matrix> domain_generators; // n x d, with form_matrix d x d
  std::optional<Matrix> form_matrix;

  bool is_form() const { return form_matrix.has_value(); }
};

/// A replayable problem instance. kind "tbt" carries graph generators for T
/// plus a selfadjoint B on the output space; kind "sum" carries two maximal
/// sectorial summands on C^n.
struct InstanceDocument {
  std::string kind;  // "tbt" | "sum"
  int dim_h = 0;     // tbt
  int dim_k = 0;     // tbt
  int n = 0;         // sum
  Matrix generators; // tbt: (dim_h + dim_k) x g
  Matrix b;          // tbt: dim_k x dim_k, selfadjoint
  std::vector<SummandSpec> summands;  // sum: exactly two
  std::optional<ToleranceConfig> tolerances;
  std::optional<std::int64_t> seed;

  ToleranceConfig effective_tolerances(const ToleranceConfig& fallback = {}) const {
    return tolerances.value_or(fallback);
  }
};

/// Parse a UTF-8 JSON instance. Schema violations are reported with the JSON
/// path of the offending field.
InstanceDocument parse_instance(const std::string& text);

/// Canonical serialization; serialize(parse(x)) is a fixed point.
std::string serialize_instance(const InstanceDocument& doc);

/// FNV-1a hash of the canonical serialization, as a hex string.
std::string instance_digest(const InstanceDocument& doc);

/// Deterministic instance generator. For kind "tbt", dims = (dim_h, dim_k)
/// and graph_dim select the relation size; B is a random selfadjoint matrix
/// scaled to norm_cap. For kind "sum", dim_h = n and both summands are built
/// from random sectorial forms (seeded chances of nontrivial mul and of a
/// rank-deficient real part); graph_dim is ignored.
InstanceDocument random_instance(const std::string& kind, int dim_h, int dim_k,
                                 int graph_dim, double norm_cap, std::uint64_t seed);

/// Realize the payload as module inputs.
LinearRelation tbt_relation(const InstanceDocument& doc, const ToleranceConfig& tol = {});
LinearRelation summand_relation(const SummandSpec& spec, int n, const ToleranceConfig& tol = {});

/// Fixed seed-mixing function: trial i of a base seed uses
/// splitmix64(seed XOR golden * (i + 1)). Serial and parallel runs agree.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, int trial_index);

/// Small deterministic RNG used by the generators (splitmix64 stream with
/// Box-Muller gaussians; independent of the standard library distributions).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  int uniform_int(int lo, int hi);     // inclusive bounds
  double gaussian();
  Complex complex_gaussian();
  Matrix gaussian_matrix(int rows, int cols);
  Matrix hermitian_matrix(int dim);    // (X + X^H) / 2

 private:
  std::uint64_t state_;
};

}  // namespace sectorial
