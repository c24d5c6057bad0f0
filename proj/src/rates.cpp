#include "hybridseq/rates.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace hybridseq {

std::pair<double, double> predicted_rates(const SpaceParams& src, const SpaceParams& tgt) {
  const double gap = std::max(0.0, inv(src.p) - inv(tgt.p));
  const double nonlinear = (src.r - tgt.r) - (tgt.s - src.s);
  const double linear = nonlinear - gap;
  if (!(tgt.s - src.s > 0.0) || !(linear > 0.0)) {
    throw parameter_error("predicted_rates: rate condition r0-r1-(1/p0-1/p1)_+ > s1-s0 > 0 fails");
  }
  return {nonlinear, linear};
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> usable;
  int dropped = 0;
  for (const auto& [m, e] : points) {
    if (e > 0.0 && m > 0.0) {
      usable.emplace_back(std::log2(m), std::log2(e));
    } else {
      ++dropped;
    }
  }
  if (usable.size() < 3) {
    throw parameter_error("fit_slope needs at least 3 points with positive error");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(usable.size());
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw parameter_error("fit_slope: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0.0;
  for (const auto& [x, y] : usable) {
    const double r = y - (slope * x + intercept);
    ss_res += r * r;
  }
  const double ss_tot = syy - sy * sy / n;
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return {-slope, intercept, r2, dropped};
}

namespace {

// Seeded selector of m distinct shifts on the fooling star level; the
// adversary then places its coefficient outside this set.
std::set<Index> random_selection(const FoolingSpec& spec, const DomainConfig& domain,
                                 std::uint64_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t range = std::uint64_t{1} << spec.M;
  std::set<Index> out;
  Index idx{spec.star_level, std::vector<std::int64_t>(domain.dimension, 0)};
  while (out.size() < std::min(m, range - 1)) {
    idx.shift[0] = static_cast<std::int64_t>(rng() % range);
    out.insert(idx);
  }
  return out;
}

}  // namespace

RateReport run_sweep(const SweepConfig& config) {
  if (config.algorithm == Algorithm::both) {
    throw parameter_error("run_sweep expects a single algorithm; expand 'both' upstream");
  }
  if (config.M_hi - config.M_lo + 1 < 3) {
    throw parameter_error("M range too short: at least 3 sweep points are required");
  }
  const DomainConfig domain{config.d};
  const auto [pred_nonlinear, pred_linear] = predicted_rates(config.src, config.tgt);

  RateReport report;
  report.config_echo = sweep_config_to_json(config);
  report.input = config.input == InputKind::stress ? "stress" : "fooling";
  report.predicted_nonlinear = pred_nonlinear;
  report.predicted_linear = pred_linear;

  // p1 <= p0: the nonlinear construction degenerates, run the linear
  // algorithm in its place (the rates coincide there)
  bool nonlinear = config.algorithm == Algorithm::nonlinear;
  if (nonlinear && !(inv(config.src.p) > inv(config.tgt.p))) {
    nonlinear = false;
    report.routed_linear = true;
  }
  report.algorithm = nonlinear ? "nonlinear" : "linear";
  report.predicted_slope = nonlinear ? pred_nonlinear : pred_linear;

  LinearPlan linear_plan = make_linear_plan(config.src, config.tgt, config.epsilon);
  std::optional<NonlinearPlan> nonlinear_plan;
  if (nonlinear) {
    nonlinear_plan = make_nonlinear_plan(config.src, config.tgt, config.epsilon,
                                         config.kappa);
  }

  if (config.input == InputKind::stress) {
    int deepest = config.M_hi;
    if (nonlinear_plan) deepest = std::max(deepest, nonlinear_plan->last_layer(config.M_hi));
    const HybridSequence input =
        stress_family(config.src, domain, linear_plan.alpha, linear_plan.beta,
                      deepest + config.depth_margin, config.seed, config.shift_cap);
    for (int M = config.M_lo; M <= config.M_hi; ++M) {
      const std::uint64_t dof = nonlinear_plan ? dof_of(*nonlinear_plan, M, domain)
                                               : dof_of(linear_plan, M, domain);
      if (static_cast<double>(dof) > config.dof_budget) {
        report.truncated = true;
        break;
      }
      const ApproxResult result = nonlinear_plan
                                      ? apply_nonlinear(*nonlinear_plan, M, input)
                                      : apply_linear(linear_plan, M, input);
      report.points.push_back({M, dof, quasinorm(result.residual, config.tgt)});
    }
  } else {
    // fooling mode: per-M adversary input against a seeded index selection
    for (int M = config.M_lo; M <= config.M_hi; ++M) {
      const FoolingSpec spec = FoolingSpec::make(config.src, config.tgt, M, config.d);
      const std::uint64_t m = std::max<std::uint64_t>(1, std::uint64_t{1} << (M - 1));
      if (static_cast<double>(m) > config.dof_budget) {
        report.truncated = true;
        break;
      }
      const std::set<Index> selection =
          random_selection(spec, domain, m, config.seed + static_cast<std::uint64_t>(M));
      const HybridSequence adversary = fooling_sequence(spec, domain, selection);
      report.points.push_back({M, m, projection_error(adversary, selection, config.tgt)});
    }
  }

  std::vector<std::pair<double, double>> fit_points;
  for (std::size_t i = 2; i < report.points.size(); ++i) {  // preasymptotic allowance
    fit_points.emplace_back(static_cast<double>(report.points[i].dof),
                            report.points[i].error);
  }
  if (report.truncated && fit_points.size() < 3) {
    report.verdict = "fail";
    return report;
  }
  report.fit = fit_slope(fit_points);
  report.tolerance = config.input == InputKind::stress ? config.slope_tol_stress
                                                       : config.slope_tol_fooling;
  report.verdict =
      std::abs(report.fit.slope - report.predicted_slope) <= report.tolerance ? "pass"
                                                                              : "fail";
  return report;
}

nlohmann::json report_to_json(const RateReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.points) {
    points.push_back({{"M", p.M}, {"dof", p.dof}, {"error", p.error}});
  }
  return {{"config", report.config_echo},
          {"algorithm", report.algorithm},
          {"input", report.input},
          {"points", std::move(points)},
          {"fit",
           {{"slope", report.fit.slope},
            {"intercept", report.fit.intercept},
            {"r2", report.fit.r_squared},
            {"dropped", report.fit.dropped}}},
          {"predicted",
           {{"nonlinear", report.predicted_nonlinear},
            {"linear", report.predicted_linear},
            {"compared", report.predicted_slope}}},
          {"tolerance", report.tolerance},
          {"routed_linear", report.routed_linear},
          {"truncated", report.truncated},
          {"verdict", report.verdict}};
}

std::string report_to_csv(const RateReport& report) {
  std::ostringstream os;
  os << "M,dof,error\n";
  for (const auto& p : report.points) {
    os << p.M << ',' << p.dof << ',' << format_double(p.error) << '\n';
  }
  return os.str();
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig config;
  if (j.contains("d")) config.d = j.at("d").get<int>();
  if (config.d < 1) throw usage_error("sweep config: dimension must be positive");
  if (j.contains("src")) config.src = space_params_from_json(j.at("src"));
  if (j.contains("tgt")) config.tgt = space_params_from_json(j.at("tgt"));
  if (j.contains("algorithm")) {
    const auto a = j.at("algorithm").get<std::string>();
    if (a == "linear") {
      config.algorithm = Algorithm::linear;
    } else if (a == "nonlinear") {
      config.algorithm = Algorithm::nonlinear;
    } else if (a == "both") {
      config.algorithm = Algorithm::both;
    } else {
      throw usage_error("sweep config: algorithm must be linear|nonlinear|both");
    }
  }
  if (j.contains("M_range")) {
    const auto& range = j.at("M_range");
    if (!range.is_array() || range.size() != 2) {
      throw usage_error("sweep config: M_range must be [lo, hi]");
    }
    config.M_lo = range[0].get<int>();
    config.M_hi = range[1].get<int>();
  }
  if (j.contains("epsilon")) config.epsilon = j.at("epsilon").get<double>();
  if (j.contains("kappa")) config.kappa = j.at("kappa").get<double>();
  if (j.contains("input")) {
    const auto in = j.at("input").get<std::string>();
    if (in == "stress") {
      config.input = InputKind::stress;
    } else if (in == "fooling") {
      config.input = InputKind::fooling;
    } else {
      throw usage_error("sweep config: input must be stress|fooling");
    }
  }
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("dof_budget")) config.dof_budget = j.at("dof_budget").get<double>();
  if (j.contains("shift_cap")) config.shift_cap = j.at("shift_cap").get<int>();
  if (j.contains("depth_margin")) config.depth_margin = j.at("depth_margin").get<int>();
  if (j.contains("slope_tol_stress")) {
    config.slope_tol_stress = j.at("slope_tol_stress").get<double>();
  }
  if (j.contains("slope_tol_fooling")) {
    config.slope_tol_fooling = j.at("slope_tol_fooling").get<double>();
  }
  return config;
}

nlohmann::json sweep_config_to_json(const SweepConfig& config) {
  nlohmann::json j = {{"d", config.d},
                      {"src", to_json(config.src)},
                      {"tgt", to_json(config.tgt)},
                      {"algorithm", config.algorithm == Algorithm::linear      ? "linear"
                                    : config.algorithm == Algorithm::nonlinear ? "nonlinear"
                                                                               : "both"},
                      {"M_range", {config.M_lo, config.M_hi}},
                      {"input", config.input == InputKind::stress ? "stress" : "fooling"},
                      {"seed", config.seed},
                      {"dof_budget", config.dof_budget},
                      {"shift_cap", config.shift_cap},
                      {"depth_margin", config.depth_margin},
                      {"slope_tol_stress", config.slope_tol_stress},
                      {"slope_tol_fooling", config.slope_tol_fooling},
                      {"generator", "stress_family/equalized-layer-profile"}};
  if (config.epsilon) j["epsilon"] = *config.epsilon;
  if (config.kappa) j["kappa"] = *config.kappa;
  return j;
}

}  // namespace hybridseq
