#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybridseq/widths.hpp"

namespace hybridseq {

enum class Algorithm { linear, nonlinear, both };
enum class InputKind { stress, fooling };

struct SweepConfig {
  int d = 2;
  SpaceParams src;
  SpaceParams tgt;
  Algorithm algorithm = Algorithm::linear;
  int M_lo = 4;
  int M_hi = 10;
  std::optional<double> epsilon;
  std::optional<double> kappa;
  InputKind input = InputKind::stress;
  std::uint64_t seed = 1;
  double dof_budget = 8e6;
  int shift_cap = 32;
  int depth_margin = 6;
  double slope_tol_stress = 0.15;
  double slope_tol_fooling = 0.05;
};

struct RatePoint {
  int M = 0;
  std::uint64_t dof = 0;
  double error = 0.0;
};

struct SlopeFit {
  double slope = 0.0;      // positive decay exponent
  double intercept = 0.0;
  double r_squared = 0.0;
  int dropped = 0;         // nonpositive-error points removed before fitting
};

struct RateReport {
  nlohmann::json config_echo;
  std::string algorithm;   // algorithm actually run ("linear"/"nonlinear")
  std::string input;
  std::vector<RatePoint> points;
  SlopeFit fit;
  double predicted_nonlinear = 0.0;
  double predicted_linear = 0.0;
  double predicted_slope = 0.0;  // the one this sweep is compared against
  double tolerance = 0.0;
  bool routed_linear = false;    // nonlinear request in the p1 <= p0 regime
  bool truncated = false;        // M range cut by the DOF budget
  std::string verdict;           // "pass" / "fail"
};

/// Predicted decay exponents:
/// nonlinear (r0-r1)-(s1-s0), linear (r0-r1)-(s1-s0)-(1/p0-1/p1)_+.
/// Requires the rate condition r0-r1-(1/p0-1/p1)_+ > s1-s0 > 0.
std::pair<double, double> predicted_rates(const SpaceParams& src, const SpaceParams& tgt);

/// Ordinary least squares on (log2 m, log2 error); the slope is reported
/// as a positive decay exponent. Nonpositive errors are dropped; fewer
/// than 3 survivors is a parameter_error.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

/// One M-sweep of one algorithm (config.algorithm must not be `both`;
/// the CLI expands that case into two runs). The fit excludes the first
/// two recorded points as preasymptotic.
RateReport run_sweep(const SweepConfig& config);

nlohmann::json report_to_json(const RateReport& report);
std::string report_to_csv(const RateReport& report);

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& config);

}  // namespace hybridseq
