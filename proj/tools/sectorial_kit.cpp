// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command line entry point: instance checking, seeded verification suites,
// and instance generation. Exit codes: 0 all checks pass, 1 verification
// failure, 2 input or usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sectorial/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

void print_report(const sectorial::VerificationReport& report) {
  for (const auto& rec : report.checks) {
    std::cout << (rec.pass ? "PASS" : "FAIL") << "  " << rec.name
              << "  residual=" << rec.residual << "  threshold=" << rec.threshold << '\n';
  }
  std::cout << (report.verdict ? "verdict: pass" : "verdict: fail") << '\n';
}

bool write_json(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  out << text;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for sectorial relations and their closed forms"};
  app.require_subcommand(1);

  std::string check_file;
  double check_tol = 0.0;
  std::string check_json_out;
  auto* check_cmd = app.add_subcommand("check", "Run all checks on one instance file");
  check_cmd->add_option("file", check_file, "Instance JSON file")->required();
  check_cmd->add_option("--tol", check_tol, "Override subspace equality tolerance");
  check_cmd->add_option("--json", check_json_out, "Write the JSON report here");

  sectorial::SuiteOptions suite_options;
  std::string suite_json_out;
  auto* suite_cmd = app.add_subcommand("suite", "Run a seeded verification suite");
  suite_cmd->add_option("--name", suite_options.name, "tbt | secondrep | sums")->required();
  suite_cmd->add_option("--trials", suite_options.trials, "Number of trials")->required();
  suite_cmd->add_option("--max-dim", suite_options.max_dim, "Largest space dimension");
  suite_cmd->add_option("--seed", suite_options.seed, "Base seed");
  suite_cmd->add_option("--norm-cap", suite_options.norm_cap, "Cap on ||B||");
  suite_cmd->add_option("--json", suite_json_out, "Write the JSON report here");

  std::string gen_kind;
  int gen_dim_h = 1, gen_dim_k = 1, gen_graph_dim = 0;
  double gen_norm_cap = 10.0;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Print a random instance document");
  gen_cmd->add_option("--kind", gen_kind, "tbt | sum")->required();
  gen_cmd->add_option("--dim-h", gen_dim_h, "Input dimension (n for kind sum)")->required();
  gen_cmd->add_option("--dim-k", gen_dim_k, "Output dimension (tbt only)");
  gen_cmd->add_option("--graph-dim", gen_graph_dim, "Graph dimension (tbt only)");
  gen_cmd->add_option("--seed", gen_seed, "Seed");
  gen_cmd->add_option("--norm-cap", gen_norm_cap, "Cap on ||B||");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*check_cmd) {
      std::ifstream in(check_file, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << check_file << '\n';
        return kExitInputError;
      }
      std::ostringstream text;
      text << in.rdbuf();
      const sectorial::InstanceDocument doc = sectorial::parse_instance(text.str());
      sectorial::ToleranceConfig tol;
      if (check_tol > 0.0) tol.subspace_eq_tol = check_tol;
      const sectorial::VerificationReport report = sectorial::check_instance(doc, tol);
      print_report(report);
      if (!check_json_out.empty() &&
          !write_json(check_json_out, sectorial::report_json(report))) {
        return kExitInputError;
      }
      return report.verdict ? kExitPass : kExitVerificationFailure;
    }
    if (*suite_cmd) {
      const sectorial::VerificationReport report = sectorial::run_suite(suite_options);
      print_report(report);
      if (!suite_json_out.empty() &&
          !write_json(suite_json_out, sectorial::report_json(report))) {
        return kExitInputError;
      }
      return report.verdict ? kExitPass : kExitVerificationFailure;
    }
    if (*gen_cmd) {
      const sectorial::InstanceDocument doc = sectorial::random_instance(
          gen_kind, gen_dim_h, gen_dim_k, gen_graph_dim, gen_norm_cap, gen_seed);
      std::cout << sectorial::serialize_instance(doc);
      return kExitPass;
    }
  } catch (const sectorial::ConsistencyError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
