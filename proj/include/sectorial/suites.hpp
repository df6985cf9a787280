// Copyright (c) 2026 the sectorial-kit developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sectorial/instance.hpp"

namespace sectorial {

/// One verified identity: an anchor string naming it, the worst numeric
/// residual seen, the pinned threshold, and (on failure) a replayable
/// serialized instance that reproduces the failure via `check`.
struct CheckRecord {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::optional<std::string> witness;
};

struct VerificationReport {
  std::string instance_digest;
  std::vector<CheckRecord> checks;
  bool verdict = true;  // all records pass
  std::int64_t elapsed_ms = 0;
};

/// Per-instance check lists. "tbt" instances run the product-identity list;
/// "sum" instances run the representation list on each summand plus the
/// sum-extension list.
std::vector<CheckRecord> tbt_checks(const InstanceDocument& doc,
                                    const ToleranceConfig& fallback_tol = {});
std::vector<CheckRecord> secondrep_checks(const InstanceDocument& doc,
                                          const ToleranceConfig& fallback_tol = {});
std::vector<CheckRecord> sums_checks(const InstanceDocument& doc,
                                     const ToleranceConfig& fallback_tol = {});

/// Everything applicable to the instance kind; used by the `check` command.
VerificationReport check_instance(const InstanceDocument& doc,
                                  const ToleranceConfig& fallback_tol = {});

struct SuiteOptions {
  std::string name = "tbt";  // "tbt" | "secondrep" | "sums"
  int trials = 100;
  int max_dim = 8;
  std::uint64_t seed = 1;
  double norm_cap = 10.0;
  ToleranceConfig tol;
};

/// The instance examined by one trial; exposed so that callers can replay or
/// reorder trials. Deterministic in (suite name, options, trial index).
InstanceDocument suite_trial_instance(const SuiteOptions& options, int trial_index);

/// Runs the named suite: per-trial instances from derived seeds, the module
/// check list on each, and an order-independent aggregate (max residual per
/// check, conjunction of passes).
VerificationReport run_suite(const SuiteOptions& options);

/// Canonical JSON rendering. With normalize_timing, elapsed_ms is zeroed so
/// reports from identical invocations compare byte-for-byte.
std::string report_json(const VerificationReport& report, bool normalize_timing = false);

}  // namespace sectorial
