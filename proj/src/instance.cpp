// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/instance.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

namespace sectorial {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw std::invalid_argument("instance schema: " + path + ": " + what);
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema_error(path, "complex scalar must be a [re, im] pair");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    schema_error(path, "non-finite entry");
  }
  return z;
}

Json dump_complex(const Complex& z) { return Json::array({z.real(), z.imag()}); }

// Matrix as an array of rows.
Matrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  if (rows == 0) return Matrix::Zero(0, 0);
  if (!j[0].is_array()) schema_error(path + "[0]", "row must be an array");
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      schema_error(row_path, "ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = parse_complex(j[r][c], row_path + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json dump_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(dump_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Generators as an array of columns.
Matrix parse_generators(const Json& j, int rows, const std::string& path) {
  if (!j.is_array()) schema_error(path, "generators must be an array of column vectors");
  Matrix m(rows, static_cast<int>(j.size()));
  for (int c = 0; c < static_cast<int>(j.size()); ++c) {
    const std::string col_path = path + "[" + std::to_string(c) + "]";
    if (!j[c].is_array() || static_cast<int>(j[c].size()) != rows) {
      schema_error(col_path, "column must hold " + std::to_string(rows) + " complex entries");
    }
    for (int r = 0; r < rows; ++r) {
      m(r, c) = parse_complex(j[c][r], col_path + "[" + std::to_string(r) + "]");
    }
  }
  return m;
}

Json dump_generators(const Matrix& m) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(dump_complex(m(r, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

int parse_dim(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "dimension must be an integer");
  const int v = j.get<int>();
  if (v <= 0) schema_error(path, "dimension must be positive");
  return v;
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("instance schema: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("$", "top level must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) schema_error("kind", "missing string");
  InstanceDocument doc;
  doc.kind = j["kind"].get<std::string>();
  if (!j.contains("dims") || !j["dims"].is_object()) schema_error("dims", "missing object");
  if (!j.contains("payload") || !j["payload"].is_object()) {
    schema_error("payload", "missing object");
  }
  const Json& payload = j["payload"];

  if (doc.kind == "tbt") {
    doc.dim_h = parse_dim(j["dims"].value("dim_h", Json()), "dims.dim_h");
    doc.dim_k = parse_dim(j["dims"].value("dim_k", Json()), "dims.dim_k");
    if (!payload.contains("generators")) schema_error("payload.generators", "missing");
    doc.generators =
        parse_generators(payload["generators"], doc.dim_h + doc.dim_k, "payload.generators");
    if (!payload.contains("b")) schema_error("payload.b", "missing");
    doc.b = parse_matrix(payload["b"], "payload.b");
    if (doc.b.rows() != doc.dim_k || doc.b.cols() != doc.dim_k) {
      schema_error("payload.b", "B must be dim_k x dim_k");
    }
  } else if (doc.kind == "sum") {
    doc.n = parse_dim(j["dims"].value("n", Json()), "dims.n");
    if (!payload.contains("summands") || !payload["summands"].is_array() ||
        payload["summands"].size() != 2) {
      schema_error("payload.summands", "exactly two summands required");
    }
    for (int idx = 0; idx < 2; ++idx) {
      const Json& sj = payload["summands"][idx];
      const std::string path = "payload.summands[" + std::to_string(idx) + "]";
      SummandSpec spec;
      if (sj.contains("graph_generators")) {
        spec.graph_generators =
            parse_generators(sj["graph_generators"], 2 * doc.n, path + ".graph_generators");
      } else if (sj.contains("form")) {
        const Json& fj = sj["form"];
        if (!fj.contains("domain_generators") || !fj.contains("matrix")) {
          schema_error(path + ".form", "needs domain_generators and matrix");
        }
        spec.domain_generators =
            parse_generators(fj["domain_generators"], doc.n, path + ".form.domain_generators");
        spec.form_matrix = parse_matrix(fj["matrix"], path + ".form.matrix");
        const int d = static_cast<int>(spec.domain_generators->cols());
        if (spec.form_matrix->rows() > doc.n || spec.form_matrix->rows() != spec.form_matrix->cols()) {
          schema_error(path + ".form.matrix", "square matrix of the domain dimension required");
        }
        (void)d;
      } else {
        schema_error(path, "summand needs graph_generators or form");
      }
      doc.summands.push_back(std::move(spec));
    }
  } else {
    schema_error("kind", "must be \"tbt\" or \"sum\"");
  }

  if (j.contains("tolerances")) {
    const Json& tj = j["tolerances"];
    if (!tj.is_object()) schema_error("tolerances", "must be an object");
    ToleranceConfig tol;
    tol.rank_rel_tol = tj.value("rank_rel_tol", tol.rank_rel_tol);
    tol.subspace_eq_tol = tj.value("subspace_eq_tol", tol.subspace_eq_tol);
    tol.psd_tol = tj.value("psd_tol", tol.psd_tol);
    tol.hermitian_tol = tj.value("hermitian_tol", tol.hermitian_tol);
    try {
      tol.validate();
    } catch (const std::exception& e) {
      schema_error("tolerances", e.what());
    }
    doc.tolerances = tol;
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) schema_error("seed", "must be an integer");
    doc.seed = j["seed"].get<std::int64_t>();
  }

  const ToleranceConfig tol = doc.effective_tolerances();
  if (doc.kind == "tbt" && !is_hermitian(doc.b, tol.hermitian_tol)) {
    schema_error("payload.b", "B must be selfadjoint");
  }
  return doc;
}

std::string serialize_instance(const InstanceDocument& doc) {
  Json j;
  j["kind"] = doc.kind;
  if (doc.kind == "tbt") {
    j["dims"] = Json{{"dim_h", doc.dim_h}, {"dim_k", doc.dim_k}};
    j["payload"] = Json{{"generators", dump_generators(doc.generators)},
                        {"b", dump_matrix(doc.b)}};
  } else {
    j["dims"] = Json{{"n", doc.n}};
    Json summands = Json::array();
    for (const SummandSpec& spec : doc.summands) {
      if (spec.is_form()) {
        summands.push_back(Json{
            {"form", Json{{"domain_generators", dump_generators(*spec.domain_generators)},
                          {"matrix", dump_matrix(*spec.form_matrix)}}}});
      } else {
        summands.push_back(Json{{"graph_generators", dump_generators(*spec.graph_generators)}});
      }
    }
    j["payload"] = Json{{"summands", std::move(summands)}};
  }
  if (doc.tolerances) {
    j["tolerances"] = Json{{"rank_rel_tol", doc.tolerances->rank_rel_tol},
                           {"subspace_eq_tol", doc.tolerances->subspace_eq_tol},
                           {"psd_tol", doc.tolerances->psd_tol},
                           {"hermitian_tol", doc.tolerances->hermitian_tol}};
  }
  if (doc.seed) j["seed"] = *doc.seed;
  return j.dump(2) + "\n";
}

std::string instance_digest(const InstanceDocument& doc) {
  const std::string text = serialize_instance(doc);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, int trial_index) {
  std::uint64_t z = base_seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(trial_index) + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SeededRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int SeededRng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

double SeededRng::gaussian() {
  // Box-Muller; explicit so the stream does not depend on the standard
  // library's distribution internals.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeededRng::complex_gaussian() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return Complex(r * std::cos(2.0 * std::numbers::pi * u2),
                 r * std::sin(2.0 * std::numbers::pi * u2));
}

Matrix SeededRng::gaussian_matrix(int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = complex_gaussian();
  }
  return m;
}

Matrix SeededRng::hermitian_matrix(int dim) {
  const Matrix x = gaussian_matrix(dim, dim);
  return (x + x.adjoint()) / 2.0;
}

namespace {

SummandSpec random_summand(SeededRng& rng, int n, double norm_cap) {
  // Seeded chances of a degenerate domain, a nontrivial mul, and a
  // rank-deficient real part.
  int d;
  const double shape = rng.uniform();
  if (shape < 0.08) {
    d = 0;
  } else if (shape < 0.58 && n >= 2) {
    d = rng.uniform_int(1, n - 1);  // nontrivial mul
  } else {
    d = rng.uniform_int(1, n);
  }
  const Subspace domain = orthonormalize(rng.gaussian_matrix(n, d));

  int rank = d;
  if (d > 0 && rng.uniform() < 0.4) rank = rng.uniform_int(0, d);
  // Build the real part in eigen-factored shape so rank deficiency is exact
  // and the root is available without clamping noise.
  Matrix m_r = Matrix::Zero(d, d);
  Matrix s = Matrix::Zero(d, d);
  if (d > 0) {
    Subspace frame = orthonormalize(rng.gaussian_matrix(d, d));
    while (frame.dim() < d) frame = orthonormalize(rng.gaussian_matrix(d, d));
    RealVector lam = RealVector::Zero(d);
    for (int i = 0; i < rank; ++i) lam(i) = 0.05 + rng.uniform();
    m_r = frame.basis * lam.asDiagonal() * frame.basis.adjoint();
    s = frame.basis * lam.cwiseSqrt().asDiagonal() * frame.basis.adjoint();
  }
  Matrix g = rng.hermitian_matrix(d);
  const double g_norm = op_norm(g);
  if (g_norm > 0.0) g *= (rng.uniform() * norm_cap) / g_norm;
  SummandSpec spec;
  spec.domain_generators = domain.basis;
  spec.form_matrix = m_r + Complex(0, 1) * (s * g * s);
  return spec;
}

}  // namespace

InstanceDocument random_instance(const std::string& kind, int dim_h, int dim_k,
                                 int graph_dim, double norm_cap, std::uint64_t seed) {
  if (dim_h < 1 || dim_h > 32 || (kind == "tbt" && (dim_k < 1 || dim_k > 32))) {
    throw std::invalid_argument("random_instance: dims must lie in 1..32");
  }
  SeededRng rng(seed);
  InstanceDocument doc;
  doc.kind = kind;
  doc.seed = static_cast<std::int64_t>(seed);
  if (kind == "tbt") {
    if (graph_dim < 0 || graph_dim > dim_h + dim_k) {
      throw std::invalid_argument("random_instance: inadmissible graph dimension");
    }
    doc.dim_h = dim_h;
    doc.dim_k = dim_k;
    doc.generators = rng.gaussian_matrix(dim_h + dim_k, graph_dim);
    Matrix b = rng.hermitian_matrix(dim_k);
    const double s = op_norm(b);
    if (s > 0.0) b *= norm_cap / s;
    doc.b = b;
  } else if (kind == "sum") {
    doc.n = dim_h;
    doc.summands.push_back(random_summand(rng, doc.n, norm_cap));
    doc.summands.push_back(random_summand(rng, doc.n, norm_cap));
  } else {
    throw std::invalid_argument("random_instance: unknown kind");
  }
  return doc;
}

LinearRelation tbt_relation(const InstanceDocument& doc, const ToleranceConfig& tol) {
  if (doc.kind != "tbt") throw std::invalid_argument("tbt_relation: wrong instance kind");
  return make_relation(doc.dim_h, doc.dim_k, doc.generators, tol);
}

LinearRelation summand_relation(const SummandSpec& spec, int n, const ToleranceConfig& tol) {
  if (spec.is_form()) {
    const Subspace domain = orthonormalize(*spec.domain_generators, tol);
    if (domain.dim() != spec.form_matrix->rows()) {
      throw std::invalid_argument(
          "summand_relation: form matrix does not match the domain dimension");
    }
    return relation_of_form(SesquilinearForm{domain, *spec.form_matrix}, tol);
  }
  return make_relation(n, n, *spec.graph_generators, tol);
}

}  // namespace sectorial
