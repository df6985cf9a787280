// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#include "sectorial/suites.hpp"

#include <chrono>
#include <map>

#include <json.hpp>

#include "sectorial/sum_extensions.hpp"

namespace sectorial {

namespace {

using Json = nlohmann::ordered_json;

constexpr Complex kI{0.0, 1.0};
constexpr double kGapTol = 1e-8;
constexpr double kBoolTol = 0.5;
constexpr double kCompressionTol = 1e-10;
constexpr double kCoincidenceTol = 1e-7;

double clean(double r) { return std::isfinite(r) ? r : 1e308; }
double bool_residual(bool ok) { return ok ? 0.0 : 1.0; }

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

std::uint64_t digest_seed(const InstanceDocument& doc) {
  return std::stoull(instance_digest(doc), nullptr, 16);
}

class CheckList {
 public:
  explicit CheckList(const InstanceDocument& doc) : doc_(doc) {}

  void add(const std::string& name, const std::string& anchor, double residual,
           double threshold) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.residual = clean(residual);
    rec.threshold = threshold;
    rec.pass = rec.residual <= threshold;
    if (!rec.pass) rec.witness = serialize_instance(doc_);
    records_.push_back(std::move(rec));
  }

  void add_bool(const std::string& name, const std::string& anchor, bool ok) {
    add(name, anchor, bool_residual(ok), kBoolTol);
  }

  void fail_with_exception(const std::exception& e) {
    CheckRecord rec;
    rec.name = "internal_consistency";
    rec.anchor = e.what();
    rec.residual = 1.0;
    rec.threshold = kBoolTol;
    rec.pass = false;
    rec.witness = serialize_instance(doc_);
    records_.push_back(std::move(rec));
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  const InstanceDocument& doc_;
  std::vector<CheckRecord> records_;
};

double inclusion_residual(const LinearRelation& inner, const LinearRelation& outer) {
  if (inner.graph_dim() == 0) return 0.0;
  const Matrix res = inner.graph.basis - outer.graph.projector() * inner.graph.basis;
  return op_norm(res);
}

}  // namespace

std::vector<CheckRecord> tbt_checks(const InstanceDocument& doc,
                                    const ToleranceConfig& fallback_tol) {
  const ToleranceConfig tol = doc.effective_tolerances(fallback_tol);
  CheckList list(doc);
  try {
    const LinearRelation t = tbt_relation(doc, tol);
    const TbtIdentityReport rep = verify_identity(t, doc.b, tol);
    list.add("product_identity",
             "T*(I+iB)T = (T_s)^x C0^(1/2)(I+iC)C0^(1/2) T_s",
             rep.identity_gap, kGapTol);
    list.add("product_mul_law", "mul T*(I+iB)T = mul T* = (dom T)^perp",
             rep.mul_gap, kGapTol);
    list.add_bool("product_sectorial", "T*(I+iB)T is sectorial with vertex 0",
                  rep.verdict.is_sectorial);
    list.add_bool("product_maximal", "T*(I+iB)T is maximal", rep.verdict.is_maximal);
    const double tan_alpha = rep.verdict.tan_alpha.value_or(1e308);
    list.add("semi_angle_c_bound", "tan(semi-angle) <= ||C||",
             std::max(0.0, tan_alpha - rep.c_norm), kGapTol);
    list.add("semi_angle_b_bound", "tan(semi-angle) <= ||B||",
             std::max(0.0, tan_alpha - rep.b_norm), kGapTol);

    const ReducedFormData data = reduced_form(t, doc.b, tol);
    const LinearRelation real_route = relation_of_form(
        SesquilinearForm{data.dom, hermitian_part(data.w.adjoint() * data.w)}, tol);
    list.add("real_part_identity", "H_r = (T_s)^x C0 T_s",
             relation_gap(real_part_relation(rep.direct, tol), real_route), kGapTol);

    // The form matrix sees only the compression of C to the closed range of
    // C0^(1/2) T_s inside dom_star.
    SeededRng prng(digest_seed(doc));
    const int d1 = data.dec.dom_star.dim();
    {
      const Subspace ran_w = orthonormalize(data.w, tol);
      const Matrix off = Matrix::Identity(d1, d1) - ran_w.projector();
      Matrix x = prng.hermitian_matrix(d1);
      if (d1 > 0) x *= (1.0 + op_norm(data.dec.c)) / std::max(op_norm(x), 1e-300);
      const Matrix c_pert = hermitian_part(data.dec.c + off * x * off);
      const Matrix m_pert =
          data.w.adjoint() *
          (Matrix::Identity(d1, d1) + kI * c_pert) * data.w;
      const double scale = std::max(op_norm(data.form_matrix), 1.0);
      list.add("c_compression_invariance",
               "form matrix depends only on C compressed to clos ran C0^(1/2)T_s",
               op_norm(m_pert - data.form_matrix) / scale, kCompressionTol);
    }
    {
      // Operator case: B may change freely on (clos ran T_s)^perp.
      const LinearRelation ts_rel = to_relation(data.dec.t_s, tol);
      const Subspace ran_ts = orthonormalize(data.dec.t_s.matrix, tol);
      const Matrix off = Matrix::Identity(t.dim_k, t.dim_k) - ran_ts.projector();
      Matrix x = prng.hermitian_matrix(t.dim_k);
      if (t.dim_k > 0) x *= (1.0 + op_norm(doc.b)) / std::max(op_norm(x), 1e-300);
      const Matrix b_pert = hermitian_part(doc.b + off * x * off);
      list.add("operator_b_compression",
               "operator case: ((I+iB)T h, T k) = ((I+iB_bb)T h, T k)",
               relation_gap(construct_direct(ts_rel, doc.b, tol),
                            construct_direct(ts_rel, b_pert, tol)),
               kGapTol);
    }
    {
      bool agree = true;
      try {
        (void)invariance_flags(t, doc.b, tol);
      } catch (const ConsistencyError&) {
        agree = false;
      }
      list.add_bool("invariance_flags_agree",
                    "B = diag(B11,B22) <=> B12 = 0 <=> C0 = I <=> B mul T c mul T; then C = B11",
                    agree);
    }
  } catch (const std::exception& e) {
    list.fail_with_exception(e);
  }
  return list.take();
}

namespace {

void summand_checks(CheckList& list, const std::string& prefix, const LinearRelation& h,
                    const ToleranceConfig& tol) {
  const SectorialityVerdict v = sectoriality(h, tol);
  list.add_bool(prefix + "maximal_sectorial", "generated summand is maximal sectorial",
                v.is_sectorial && v.is_maximal);
  if (!(v.is_sectorial && v.is_maximal)) return;

  const SecondRepresentation rep = second_representation(h, tol);
  list.add(prefix + "second_rep_roundtrip",
           "H = ((H_r)_s^(1/2))^x (I+iG)(H_r)_s^(1/2)",
           relation_gap(reconstruct_second_rep(rep, tol), h), kGapTol);
  list.add(prefix + "g_norm_tan_alpha", "||G|| = tan(alpha)",
           std::abs(rep.tan_alpha - v.tan_alpha.value()), kGapTol);
  {
    const Matrix s = rep.s_half.domain.basis.adjoint() * rep.s_half.matrix;
    Matrix kernel = Matrix::Zero(s.rows(), 0);
    if (s.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(s));
      const double cutoff = tol.rank_rel_tol * std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
      int nulls = 0;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (std::abs(es.eigenvalues()(i)) <= cutoff) ++nulls;
      }
      kernel = es.eigenvectors().leftCols(nulls);
    }
    const double scale = std::max(op_norm(rep.g), 1.0);
    list.add(prefix + "g_trivial_on_ker", "G vanishes on ker (H_r)_s^(1/2)",
             op_norm(rep.g * kernel) / scale, kCompressionTol);
  }
  {
    const RelationParts p = parts(h, tol);
    const RelationParts pr = parts(rep.h_r, tol);
    const double res = std::max(gap(p.mul, complement(p.dom)), gap(p.mul, pr.mul));
    list.add(prefix + "mul_laws", "mul H = (dom H)^perp = mul H_r", res, kGapTol);
  }
  const SesquilinearForm f = form_of(h, tol);
  list.add(prefix + "relation_roundtrip", "relation -> form -> relation is the identity",
           relation_gap(relation_of_form(f, tol), h), kGapTol);
  {
    const SesquilinearForm f2 = form_of(relation_of_form(f, tol), tol);
    const double scale = std::max(op_norm(f.ambient_operator()), 1.0);
    list.add(prefix + "form_roundtrip", "form -> relation -> form is the identity",
             op_norm(f2.ambient_operator() - f.ambient_operator()) / scale, kGapTol);
  }
  list.add(prefix + "pencil_tan_alpha", "tan(alpha) from the reduced Hermitian pencil",
           std::abs(pencil_tan_alpha(f.real_part(), f.imag_part(), tol) - v.tan_alpha.value()),
           kGapTol);
  {
    const LinearRelation scaled = apply_left(2.5 * Matrix::Identity(h.dim_k, h.dim_k), h, tol);
    const SectorialityVerdict vs = sectoriality(scaled, tol);
    double res = bool_residual(vs.is_accretive == v.is_accretive &&
                               vs.is_sectorial == v.is_sectorial &&
                               vs.is_maximal == v.is_maximal);
    if (res == 0.0) res = std::abs(vs.tan_alpha.value() - v.tan_alpha.value());
    list.add(prefix + "scaling_invariance",
             "verdicts invariant under positive rescaling of the output", res, kGapTol);
  }
}

}  // namespace

std::vector<CheckRecord> secondrep_checks(const InstanceDocument& doc,
                                          const ToleranceConfig& fallback_tol) {
  const ToleranceConfig tol = doc.effective_tolerances(fallback_tol);
  CheckList list(doc);
  try {
    if (doc.kind != "sum") {
      throw std::invalid_argument("secondrep checks need a \"sum\" instance");
    }
    for (int idx = 0; idx < 2; ++idx) {
      const LinearRelation h = summand_relation(doc.summands[idx], doc.n, tol);
      summand_checks(list, "s" + std::to_string(idx + 1) + "_", h, tol);
    }
  } catch (const std::exception& e) {
    list.fail_with_exception(e);
  }
  return list.take();
}

std::vector<CheckRecord> sums_checks(const InstanceDocument& doc,
                                     const ToleranceConfig& fallback_tol) {
  const ToleranceConfig tol = doc.effective_tolerances(fallback_tol);
  CheckList list(doc);
  try {
    if (doc.kind != "sum") {
      throw std::invalid_argument("sums checks need a \"sum\" instance");
    }
    const LinearRelation h1 = summand_relation(doc.summands[0], doc.n, tol);
    const LinearRelation h2 = summand_relation(doc.summands[1], doc.n, tol);
    const SummandData s1 = prepare_summand(h1, tol);
    const SummandData s2 = prepare_summand(h2, tol);
    const SumExtensionWorkspace ws = build_workspace(s1, s2, tol);
    const LinearRelation psi_star = adjoint(ws.psi, tol);

    list.add("inclusion_k_phi", "K c Phi", inclusion_residual(ws.k_rel, ws.phi), kGapTol);
    list.add("inclusion_phi_psi_star", "Phi c Psi*", inclusion_residual(ws.phi, psi_star),
             kGapTol);
    list.add("inclusion_psi_phi_star", "Psi c Phi*", inclusion_residual(ws.psi, ws.phi_star),
             kGapTol);
    list.add("inclusion_phi_star_k_star", "Phi* c K*",
             inclusion_residual(ws.phi_star, ws.k_star), kGapTol);

    const LinearRelation sum = add_relations(h1, h2, tol);
    {
      const RelationParts ps = parts(sum, tol);
      const Subspace mul_join = join(complement(s1.dom), complement(s2.dom), tol);
      list.add("mul_sum_law", "mul(H1+H2) = mul H1 + mul H2", gap(ps.mul, mul_join), kGapTol);

      const RelationParts pphi = parts(ws.phi, tol);
      Matrix block(2 * ws.n, s1.dom.dim() + s2.dom.dim());
      block.setZero();
      block.block(0, 0, ws.n, s1.dom.dim()) = s1.dom.basis;
      block.block(ws.n, s1.dom.dim(), ws.n, s2.dom.dim()) = s2.dom.basis;
      list.add("dom_phi_law", "dom Phi = dom A1^(1/2) x dom A2^(1/2)",
               gap(pphi.dom, orthonormalize(block, tol)), kGapTol);
      list.add("mul_phi_law", "mul Phi = mul H1 + mul H2", gap(pphi.mul, mul_join), kGapTol);
    }
    list.add("d_image_law", "clos dom K = (I+i B_oplus) clos ran Psi",
             gap(ws.d_space,
                 orthonormalize((Matrix::Identity(2 * ws.n, 2 * ws.n) + kI * ws.b_oplus) *
                                    ws.e_space.basis,
                                tol)),
             kGapTol);
    {
      // (I+i B_oplus) Psi f = C0^(1/2)(I+iC)C0^(1/2) P_D Psi f on dom Psi.
      const OperatorOnSubspace psi_op = operator_part(ws.psi, tol);
      const Matrix c0_half = psd_sqrt(ws.c0, tol);
      const Matrix lhs =
          (Matrix::Identity(2 * ws.n, 2 * ws.n) + kI * ws.b_oplus) * psi_op.matrix;
      const Matrix rhs = ws.d_space.basis *
                         (c0_half * (Matrix::Identity(ws.d_space.dim(), ws.d_space.dim()) +
                                     kI * ws.c) *
                          c0_half) *
                         ws.d_space.basis.adjoint() * psi_op.matrix;
      const double scale = std::max(op_norm(lhs), 1.0);
      list.add("psi_image_identity",
               "(I+i B_oplus) Psi f = C0^(1/2)(I+iC)C0^(1/2) P_D Psi f",
               op_norm(lhs - rhs) / scale, kGapTol);
    }
    list.add_bool("sum_maximal_sectorial", "H1+H2 is maximal sectorial at finite dimension",
                  is_maximal_sectorial(sum, tol));

    const ExtensionResult fr = friedrichs_extension(ws, tol);
    list.add("friedrichs_routes", "Psi*(I+iB_oplus)Psi = Psi* C0^(1/2)(I+iC)C0^(1/2) P_D Psi",
             fr.routes_gap, kGapTol);
    const KreinResult kr = krein_extension(ws, tol);
    list.add("krein_routes", "K(I+iB_oplus)K* = ((K*)_s)^x C0^(1/2)(I+iC)C0^(1/2)(K*)_s",
             kr.routes_gap, kGapTol);
    list.add("krein_form_represents", "the Krein form represents the Krein extension",
             relation_gap(relation_of_form(kr.form, tol), kr.relation), kGapTol);

    const LinearRelation fs = form_sum_extension(ws, tol);

    // Extremal family: the endpoint domains plus one seeded intermediate one.
    SeededRng prng(digest_seed(doc));
    const Subspace psi_dom = parts(ws.psi, tol).dom;
    const Subspace ks_dom = operator_part(ws.k_star, tol).domain;
    const Subspace slack = meet(complement(psi_dom), ks_dom, tol);
    Subspace sampled = psi_dom;
    if (slack.dim() > 0) {
      const int r = prng.uniform_int(0, slack.dim());
      sampled = join(psi_dom,
                     orthonormalize(slack.basis * prng.gaussian_matrix(slack.dim(), r), tol), tol);
    }
    std::vector<LinearRelation> family = {fr.relation, kr.relation, fs,
                                          extremal_from_domain(ws, psi_dom, tol),
                                          extremal_from_domain(ws, ks_dom, tol),
                                          extremal_from_domain(ws, sampled, tol)};
    double worst = 0.0;
    for (std::size_t a = 0; a < family.size(); ++a) {
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        worst = std::max(worst, relation_gap(family[a], family[b]));
      }
    }
    list.add("extension_coincidence",
             "Friedrichs, Krein, form sum and all extremal extensions coincide with H1+H2",
             std::max(worst, relation_gap(family.front(), sum)), kCoincidenceTol);

    list.add("ef_gap", "clos ran Psi = clos ran (Phi*)_s", gap(ws.e_space, ws.f_space), kGapTol);
    {
      bool verdicts_agree = true;
      bool extremal = false;
      try {
        extremal = is_form_sum_extremal(ws, tol);
      } catch (const ConsistencyError&) {
        verdicts_agree = false;
      }
      list.add_bool("extremal_predicate_consistency",
                    "form sum extremal <=> E = F <=> its form restricts the Krein form",
                    verdicts_agree && extremal);
    }
  } catch (const std::exception& e) {
    list.fail_with_exception(e);
  }
  return list.take();
}

VerificationReport check_instance(const InstanceDocument& doc,
                                  const ToleranceConfig& fallback_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport report;
  report.instance_digest = instance_digest(doc);
  if (doc.kind == "tbt") {
    report.checks = tbt_checks(doc, fallback_tol);
  } else {
    report.checks = secondrep_checks(doc, fallback_tol);
    for (CheckRecord& rec : sums_checks(doc, fallback_tol)) {
      report.checks.push_back(std::move(rec));
    }
  }
  for (const CheckRecord& rec : report.checks) report.verdict = report.verdict && rec.pass;
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return report;
}

InstanceDocument suite_trial_instance(const SuiteOptions& options, int trial_index) {
  const std::uint64_t trial_seed = derive_trial_seed(options.seed, trial_index);
  SeededRng param(trial_seed);
  if (options.name == "tbt") {
    const int dim_h = param.uniform_int(1, options.max_dim);
    const int dim_k = param.uniform_int(1, options.max_dim);
    // Even trials force a nontrivial multivalued part: a graph of dimension
    // above dim_h must contain vectors with vanishing input component.
    const bool force_mul = trial_index % 2 == 0;
    const int graph_dim = force_mul ? param.uniform_int(dim_h + 1, dim_h + dim_k)
                                    : param.uniform_int(0, dim_h + dim_k);
    return random_instance("tbt", dim_h, dim_k, graph_dim, options.norm_cap,
                           param.next_u64());
  }
  if (options.name == "secondrep" || options.name == "sums") {
    const int n = param.uniform_int(1, options.max_dim);
    return random_instance("sum", n, 0, 0, options.norm_cap, param.next_u64());
  }
  throw std::invalid_argument("unknown suite: " + options.name);
}

VerificationReport run_suite(const SuiteOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
  if (options.max_dim < 1 || options.max_dim > 32) {
    throw std::invalid_argument("run_suite: max_dim must lie in 1..32");
  }
  const auto t0 = std::chrono::steady_clock::now();

  struct Aggregate {
    CheckRecord rec;
    int witness_trial = -1;
  };
  std::map<std::string, Aggregate> by_name;
  std::string digest_feed = "suite:" + options.name + ":" + std::to_string(options.trials) +
                            ":" + std::to_string(options.max_dim) + ":" +
                            std::to_string(options.seed);

  for (int trial = 0; trial < options.trials; ++trial) {
    const InstanceDocument doc = suite_trial_instance(options, trial);
    digest_feed += ":" + instance_digest(doc);
    std::vector<CheckRecord> records;
    if (options.name == "tbt") {
      records = tbt_checks(doc, options.tol);
    } else if (options.name == "secondrep") {
      records = secondrep_checks(doc, options.tol);
    } else {
      records = sums_checks(doc, options.tol);
    }
    for (CheckRecord& rec : records) {
      auto it = by_name.find(rec.name);
      if (it == by_name.end()) {
        Aggregate agg;
        agg.rec = rec;
        agg.witness_trial = rec.pass ? -1 : trial;
        by_name.emplace(rec.name, std::move(agg));
        continue;
      }
      Aggregate& agg = it->second;
      agg.rec.pass = agg.rec.pass && rec.pass;
      const bool stronger =
          rec.residual > agg.rec.residual ||
          (rec.residual == agg.rec.residual && !rec.pass && agg.witness_trial > trial);
      if (stronger) {
        agg.rec.residual = rec.residual;
        if (!rec.pass) {
          agg.rec.witness = rec.witness;
          agg.witness_trial = trial;
        }
      }
      if (!agg.rec.pass && !agg.rec.witness && rec.witness) {
        agg.rec.witness = rec.witness;
        agg.witness_trial = trial;
      }
    }
  }

  VerificationReport report;
  {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : digest_feed) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    report.instance_digest = buf;
  }
  for (auto& [name, agg] : by_name) {
    report.verdict = report.verdict && agg.rec.pass;
    report.checks.push_back(std::move(agg.rec));
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return report;
}

std::string report_json(const VerificationReport& report, bool normalize_timing) {
  Json j;
  j["instance_digest"] = report.instance_digest;
  Json checks = Json::array();
  for (const CheckRecord& rec : report.checks) {
    Json c;
    c["name"] = rec.name;
    c["anchor"] = rec.anchor;
    c["residual"] = clean(rec.residual);
    c["threshold"] = rec.threshold;
    c["pass"] = rec.pass;
    if (rec.witness) c["witness"] = Json::parse(*rec.witness);
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = report.verdict ? "pass" : "fail";
  j["elapsed_ms"] = normalize_timing ? 0 : report.elapsed_ms;
  return j.dump(2) + "\n";
}

}  // namespace sectorial
