#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybridseq/rates.hpp"

namespace hybridseq {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;       // printed, never serialized (reports stay reproducible)
  double time_limit = 0.0;
  nlohmann::json details;
};

struct VerifyOptions {
  std::uint64_t seed = 20240817;
  std::vector<int> criteria;  // empty means all
};

VerifyOptions verify_options_from_json(const nlohmann::json& j);

/// Runs the registered verification checks (Stechkin, lattice,
/// combinatorics, the four rate reproductions, oracle equivalence and
/// the f/b consistency suite).
std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// Deterministic summary: same options and seed give byte-identical JSON.
nlohmann::json verification_summary(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace hybridseq
