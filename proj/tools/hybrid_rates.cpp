// Command-line harness for the hybrid-space approximation library.
//
// Subcommands:
//   norm       quasi-norm of a coefficient sequence in one space
//   enumerate  level sets Delta_mu / L_mu, index sets, cardinality tables
//   approx     apply the linear or nonlinear algorithm to one sequence
//   sweep      error-vs-DOF rate sweep with a log-log slope fit
//   verify     run the full verification suite
//
// Every subcommand accepts --config <path> (JSON) plus flag overrides and
// --output csv|json. Exit codes: 0 ok, 1 check failure, 2 usage or
// parameter error, 3 resource budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hybridseq/rates.hpp"
#include "hybridseq/verify.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw hybridseq::usage_error("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw hybridseq::usage_error("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw hybridseq::usage_error("config " + path + ": expected an object");
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw hybridseq::usage_error("cannot open output file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

hybridseq::HybridSequence load_sequence(const json& config, const std::string& path) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw hybridseq::usage_error("cannot open sequence file: " + path);
    return hybridseq::sequence_from_json(json::parse(in));
  }
  if (config.contains("sequence")) {
    return hybridseq::sequence_from_json(config.at("sequence"));
  }
  throw hybridseq::usage_error("no sequence given: use --sequence or a \"sequence\" config key");
}

struct CommonArgs {
  std::string config_path;
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--output", args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", args.out_path, "output file (default stdout)");
}

// --- norm -----------------------------------------------------------------

int run_norm(const CommonArgs& args, const std::string& seq_path) {
  const json config = load_config(args.config_path);
  if (!config.contains("space")) {
    throw hybridseq::usage_error("norm: config needs a \"space\" key");
  }
  const hybridseq::SpaceParams params =
      hybridseq::space_params_from_json(config.at("space"));
  const hybridseq::HybridSequence seq = load_sequence(config, seq_path);
  const double value = hybridseq::quasinorm(seq, params);
  if (args.format == "csv") {
    emit("norm\n" + hybridseq::format_double(value) + "\n", args.out_path);
  } else {
    emit(json{{"space", to_json(params)},
              {"support", seq.support_size()},
              {"norm", value}}
             .dump(2),
         args.out_path);
  }
  return 0;
}

// --- enumerate ------------------------------------------------------------

int run_enumerate(const CommonArgs& args, double alpha, double beta, int mu, int d,
                  const std::string& what) {
  json config = load_config(args.config_path);
  if (config.contains("alpha")) alpha = config.at("alpha").get<double>();
  if (config.contains("beta")) beta = config.at("beta").get<double>();
  if (config.contains("mu")) mu = config.at("mu").get<int>();
  if (config.contains("d")) d = config.at("d").get<int>();
  const std::string kind = config.value("what", what);
  const hybridseq::DomainConfig domain{d};

  if (kind == "counts") {
    const auto profile = hybridseq::cardinality_profile(alpha, beta, mu, domain);
    if (args.format == "csv") {
      std::ostringstream os;
      os << "mu,delta_size,layer_size\n";
      for (const auto& row : profile) {
        os << row.mu << ',' << row.delta_size << ',' << row.layer_size << '\n';
      }
      emit(os.str(), args.out_path);
    } else {
      json rows = json::array();
      for (const auto& row : profile) {
        rows.push_back({{"mu", row.mu},
                        {"delta_size", row.delta_size},
                        {"layer_size", row.layer_size}});
      }
      emit(json{{"alpha", alpha}, {"beta", beta}, {"d", d}, {"rows", rows}}.dump(2),
           args.out_path);
    }
    return 0;
  }

  if (kind == "delta" || kind == "layer") {
    const auto levels = kind == "delta"
                            ? hybridseq::enumerate_delta(alpha, beta, mu, domain)
                            : hybridseq::enumerate_layer(alpha, beta, mu, domain);
    if (args.format == "csv") {
      std::ostringstream os;
      for (const auto& j : levels) {
        for (std::size_t i = 0; i < j.size(); ++i) os << (i ? "," : "") << j[i];
        os << '\n';
      }
      emit(os.str(), args.out_path);
    } else {
      emit(json{{"alpha", alpha},
                {"beta", beta},
                {"mu", mu},
                {"d", d},
                {"levels", levels}}
               .dump(2),
           args.out_path);
    }
    return 0;
  }

  if (kind == "nabla") {
    const auto indices = hybridseq::enumerate_nabla_mu(alpha, beta, mu, domain);
    if (args.format == "csv") {
      std::ostringstream os;
      for (const auto& idx : indices) {
        for (std::size_t i = 0; i < idx.level.size(); ++i) {
          os << (i ? "," : "") << idx.level[i];
        }
        for (const auto k : idx.shift) os << ',' << k;
        os << '\n';
      }
      emit(os.str(), args.out_path);
    } else {
      json out = json::array();
      for (const auto& idx : indices) {
        out.push_back({{"j", idx.level}, {"k", idx.shift}});
      }
      emit(json{{"mu", mu}, {"indices", out}}.dump(2), args.out_path);
    }
    return 0;
  }

  throw hybridseq::usage_error("enumerate: --what must be delta|layer|nabla|counts");
}

// --- approx ---------------------------------------------------------------

int run_approx(const CommonArgs& args, const std::string& seq_path,
               std::optional<int> M_flag, const std::string& algorithm_flag) {
  const json config = load_config(args.config_path);
  if (!config.contains("src") || !config.contains("tgt")) {
    throw hybridseq::usage_error("approx: config needs \"src\" and \"tgt\" spaces");
  }
  const auto src = hybridseq::space_params_from_json(config.at("src"));
  const auto tgt = hybridseq::space_params_from_json(config.at("tgt"));
  std::optional<double> epsilon, kappa;
  if (config.contains("epsilon")) epsilon = config.at("epsilon").get<double>();
  if (config.contains("kappa")) kappa = config.at("kappa").get<double>();
  const int M = M_flag.value_or(config.value("M", 4));
  std::string algorithm = algorithm_flag;
  if (algorithm.empty()) algorithm = config.value("algorithm", "linear");
  if (algorithm != "linear" && algorithm != "nonlinear") {
    throw hybridseq::usage_error("approx: algorithm must be linear|nonlinear");
  }
  const hybridseq::HybridSequence seq = load_sequence(config, seq_path);

  hybridseq::ApproxResult result;
  json plan_json;
  if (algorithm == "linear") {
    const auto plan = hybridseq::make_linear_plan(src, tgt, epsilon);
    result = hybridseq::apply_linear(plan, M, seq);
    plan_json = hybridseq::plan_to_json(plan, M);
  } else {
    const auto plan = hybridseq::make_nonlinear_plan(src, tgt, epsilon, kappa);
    result = hybridseq::apply_nonlinear(plan, M, seq);
    plan_json = hybridseq::plan_to_json(plan, M, seq.domain());
  }
  const double error = hybridseq::quasinorm(result.residual, tgt);

  if (args.format == "csv") {
    std::ostringstream os;
    os << "algorithm,M,kept,error\n"
       << algorithm << ',' << M << ',' << result.dof << ','
       << hybridseq::format_double(error) << '\n';
    emit(os.str(), args.out_path);
  } else {
    emit(json{{"plan", plan_json},
              {"algorithm", algorithm},
              {"kept", result.dof},
              {"error", error},
              {"approximant", hybridseq::to_json(result.approximant)}}
             .dump(2),
         args.out_path);
  }
  return 0;
}

// --- sweep ----------------------------------------------------------------

int run_sweep_cmd(const CommonArgs& args, const json& overrides) {
  json config = load_config(args.config_path);
  config.update(overrides);
  const hybridseq::SweepConfig base = hybridseq::sweep_config_from_json(config);

  std::vector<hybridseq::RateReport> reports;
  if (base.algorithm == hybridseq::Algorithm::both) {
    for (auto a : {hybridseq::Algorithm::linear, hybridseq::Algorithm::nonlinear}) {
      hybridseq::SweepConfig one = base;
      one.algorithm = a;
      reports.push_back(hybridseq::run_sweep(one));
    }
  } else {
    reports.push_back(hybridseq::run_sweep(base));
  }

  if (args.format == "csv") {
    std::ostringstream os;
    for (const auto& report : reports) {
      if (reports.size() > 1) os << "# algorithm=" << report.algorithm << '\n';
      os << hybridseq::report_to_csv(report);
    }
    emit(os.str(), args.out_path);
  } else if (reports.size() == 1) {
    emit(hybridseq::report_to_json(reports.front()).dump(2), args.out_path);
  } else {
    json out = json::array();
    for (const auto& report : reports) out.push_back(hybridseq::report_to_json(report));
    emit(out.dump(2), args.out_path);
  }
  for (const auto& report : reports) {
    if (report.verdict != "pass") return 1;
  }
  return 0;
}

// --- verify ---------------------------------------------------------------

int run_verify(const CommonArgs& args, std::optional<std::uint64_t> seed_flag,
               const std::vector<int>& criteria_flag) {
  const json config = load_config(args.config_path);
  hybridseq::VerifyOptions options = hybridseq::verify_options_from_json(config);
  if (seed_flag) options.seed = *seed_flag;
  if (!criteria_flag.empty()) options.criteria = criteria_flag;

  const auto results = hybridseq::run_verification(options);
  for (const auto& r : results) {
    std::cerr << (r.pass ? "pass" : "FAIL") << "  criterion " << r.criterion << "  "
              << r.name << "  (" << r.seconds << " s, limit " << r.time_limit
              << " s)\n";
    if (r.seconds > r.time_limit) {
      std::cerr << "warn  criterion " << r.criterion << " exceeded its time limit\n";
    }
  }
  const json summary = hybridseq::verification_summary(results);
  if (args.format == "csv") {
    std::ostringstream os;
    os << "criterion,name,pass\n";
    for (const auto& r : results) {
      os << r.criterion << ',' << r.name << ',' << (r.pass ? 1 : 0) << '\n';
    }
    emit(os.str(), args.out_path);
  } else {
    emit(summary.dump(2), args.out_path);
  }
  return hybridseq::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid-smoothness sequence spaces: norms, sparse approximation, rate sweeps"};
  app.require_subcommand(1);

  CommonArgs norm_args, enum_args, approx_args, sweep_args, verify_args;

  auto* norm_cmd = app.add_subcommand("norm", "quasi-norm of a sequence");
  add_common(norm_cmd, norm_args);
  std::string norm_seq_path;
  norm_cmd->add_option("--sequence", norm_seq_path, "sequence JSON file");

  auto* enum_cmd = app.add_subcommand("enumerate", "level and index set enumeration");
  add_common(enum_cmd, enum_args);
  double alpha = 1.0, beta = 0.5;
  int mu = 4, enum_d = 2;
  std::string what = "delta";
  enum_cmd->add_option("--alpha", alpha, "layer slope alpha");
  enum_cmd->add_option("--beta", beta, "layer slope beta");
  enum_cmd->add_option("--mu", mu, "layer parameter");
  enum_cmd->add_option("--d", enum_d, "dimension");
  enum_cmd->add_option("--what", what, "delta|layer|nabla|counts");

  auto* approx_cmd = app.add_subcommand("approx", "apply one approximation algorithm");
  add_common(approx_cmd, approx_args);
  std::string approx_seq_path, approx_algorithm;
  std::optional<int> approx_M;
  approx_cmd->add_option("--sequence", approx_seq_path, "sequence JSON file");
  approx_cmd->add_option("--M", approx_M, "truncation parameter");
  approx_cmd->add_option("--algorithm", approx_algorithm, "linear|nonlinear");

  auto* sweep_cmd = app.add_subcommand("sweep", "rate sweep with slope fit");
  add_common(sweep_cmd, sweep_args);
  std::optional<int> sweep_d, sweep_lo, sweep_hi;
  std::optional<std::uint64_t> sweep_seed;
  std::string sweep_algorithm, sweep_input;
  sweep_cmd->add_option("--d", sweep_d, "dimension");
  sweep_cmd->add_option("--M-lo", sweep_lo, "first sweep point");
  sweep_cmd->add_option("--M-hi", sweep_hi, "last sweep point");
  sweep_cmd->add_option("--seed", sweep_seed, "input generator seed");
  sweep_cmd->add_option("--algorithm", sweep_algorithm, "linear|nonlinear|both");
  sweep_cmd->add_option("--input", sweep_input, "stress|fooling");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  add_common(verify_cmd, verify_args);
  std::optional<std::uint64_t> verify_seed;
  std::vector<int> verify_criteria;
  verify_cmd->add_option("--seed", verify_seed, "suite seed");
  verify_cmd->add_option("--criteria", verify_criteria, "subset of criteria (1..9)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm_args, norm_seq_path);
    if (enum_cmd->parsed()) {
      return run_enumerate(enum_args, alpha, beta, mu, enum_d, what);
    }
    if (approx_cmd->parsed()) {
      return run_approx(approx_args, approx_seq_path, approx_M, approx_algorithm);
    }
    if (sweep_cmd->parsed()) {
      json overrides = json::object();
      if (sweep_d) overrides["d"] = *sweep_d;
      if (sweep_lo || sweep_hi) {
        json config = load_config(sweep_args.config_path);
        int lo = 4, hi = 10;
        if (config.contains("M_range")) {
          lo = config.at("M_range")[0].get<int>();
          hi = config.at("M_range")[1].get<int>();
        }
        overrides["M_range"] = {sweep_lo.value_or(lo), sweep_hi.value_or(hi)};
      }
      if (sweep_seed) overrides["seed"] = *sweep_seed;
      if (!sweep_algorithm.empty()) overrides["algorithm"] = sweep_algorithm;
      if (!sweep_input.empty()) overrides["input"] = sweep_input;
      return run_sweep_cmd(sweep_args, overrides);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_args, verify_seed, verify_criteria);
    }
  } catch (const hybridseq::resource_error& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const hybridseq::usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const hybridseq::parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
