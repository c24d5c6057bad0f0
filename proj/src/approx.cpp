#include "hybridseq/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hybridseq {

namespace {

void require_rate_condition(const SpaceParams& src, const SpaceParams& tgt) {
  const double gap = std::max(0.0, inv(src.p) - inv(tgt.p));
  const double mixed_drop = src.r - tgt.r - gap;
  const double iso_gain = tgt.s - src.s;
  if (!(iso_gain > 0.0)) {
    throw parameter_error("rate condition violated: s1 - s0 > 0 fails (s1 - s0 = " +
                          std::to_string(iso_gain) + ")");
  }
  if (!(mixed_drop > iso_gain)) {
    throw parameter_error(
        "rate condition violated: r0 - r1 - (1/p0 - 1/p1)_+ > s1 - s0 fails (" +
        std::to_string(mixed_drop) + " <= " + std::to_string(iso_gain) + ")");
  }
}

double rearrangement_weight(const SpaceParams& src, double epsilon, const LevelVec& j) {
  const int l1 = level_sum(j);
  const int linf = level_max(j);
  return std::exp2(-(l1 - linf) * epsilon / 2.0 + (src.r - inv(src.p)) * l1 +
                   src.s * linf);
}

std::uint64_t to_count(long double v, const char* what) {
  if (v > 0x1p62L) {
    throw resource_error(std::string(what) + " exceeds the representable index-count range");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

LinearPlan make_linear_plan(const SpaceParams& src, const SpaceParams& tgt,
                            std::optional<double> epsilon) {
  require_rate_condition(src, tgt);
  const double iso_gain = tgt.s - src.s;
  const double eps = epsilon.value_or(iso_gain / 2.0);
  if (!(eps > 0.0) || !(eps < iso_gain)) {
    throw parameter_error("epsilon must lie in (0, s1 - s0)");
  }
  // p1 <= p0 reduces to the zero-gap case
  const double gap = inv(src.p) > inv(tgt.p) ? inv(src.p) - inv(tgt.p) : 0.0;
  LinearPlan plan{src, tgt, eps, src.r - tgt.r - gap - eps, iso_gain - eps};
  return plan;
}

ApproxResult apply_linear(const LinearPlan& plan, int M, const HybridSequence& seq) {
  ApproxResult result;
  result.approximant = HybridSequence(seq.domain());
  result.residual = HybridSequence(seq.domain());
  for (const auto& [idx, v] : seq.entries()) {
    if (layer_of(plan.alpha, plan.beta, idx.level) <= M) {
      result.approximant.set(idx, v);
      result.kept.insert(idx);
    } else {
      result.residual.set(idx, v);
    }
  }
  result.dof = result.kept.size();
  return result;
}

std::pair<double, double> kappa_window(const LinearPlan& base) {
  const double lo = 1.0 / (base.alpha - base.beta);
  const double p_gap = inv(base.src.p) - inv(base.tgt.p);
  if (!(p_gap > 0.0)) {
    throw parameter_error("kappa window requires p0 < p1");
  }
  return {lo, lo + 1.0 / p_gap};
}

NonlinearPlan make_nonlinear_plan(const SpaceParams& src, const SpaceParams& tgt,
                                  std::optional<double> epsilon,
                                  std::optional<double> kappa) {
  if (!(inv(src.p) > inv(tgt.p))) {
    throw parameter_error(
        "nonlinear algorithm requires p0 < p1; for p1 <= p0 the linear "
        "algorithm already attains the optimal rate, use it instead");
  }
  NonlinearPlan plan;
  plan.base = make_linear_plan(src, tgt, epsilon);
  const auto [lo, hi] = kappa_window(plan.base);
  plan.kappa = kappa.value_or((lo + hi) / 2.0);
  if (!(plan.kappa > lo) || !(plan.kappa < hi)) {
    throw parameter_error("kappa must lie strictly inside (" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
  }
  return plan;
}

int NonlinearPlan::last_layer(int M) const {
  const double ratio =
      ((base.src.r - base.tgt.r) - (base.tgt.s - base.src.s)) / (base.alpha - base.beta);
  return static_cast<int>(std::floor(ratio * M + kLayerTol * std::max(1.0, ratio * M)));
}

std::uint64_t NonlinearPlan::budget(int M, int mu, const DomainConfig& domain) const {
  const double inv_ab = 1.0 / (base.alpha - base.beta);
  const long double exponent =
      static_cast<long double>(kappa) * M + (inv_ab - kappa) * mu;
  const long double raw = std::ceil(std::exp2l(exponent));
  const long double cap = nabla_mu_size(base.alpha, base.beta, mu, domain);
  return to_count(std::min(raw, cap), "layer budget");
}

std::vector<Index> weighted_rearrangement(const HybridSequence& seq,
                                          const std::vector<Index>& layer_indices,
                                          double epsilon, const SpaceParams& src,
                                          double alpha, double beta) {
  if (layer_indices.empty()) return {};
  const int mu = layer_of(alpha, beta, layer_indices.front().level);
  std::vector<std::pair<double, Index>> weighted;
  weighted.reserve(layer_indices.size());
  for (const Index& idx : layer_indices) {
    if (layer_of(alpha, beta, idx.level) != mu) {
      throw parameter_error("weighted_rearrangement: indices span more than one layer");
    }
    weighted.emplace_back(rearrangement_weight(src, epsilon, idx.level) * std::abs(seq.at(idx)),
                          idx);
  }
  std::sort(weighted.begin(), weighted.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<Index> out;
  out.reserve(weighted.size());
  for (auto& [w, idx] : weighted) out.push_back(std::move(idx));
  return out;
}

ApproxResult apply_nonlinear(const NonlinearPlan& plan, int M, const HybridSequence& seq) {
  const LinearPlan& base = plan.base;
  const int last = plan.last_layer(M);
  ApproxResult result;
  result.approximant = HybridSequence(seq.domain());
  result.residual = HybridSequence(seq.domain());

  std::map<int, std::vector<Index>> correction_layers;
  for (const auto& [idx, v] : seq.entries()) {
    const int mu = layer_of(base.alpha, base.beta, idx.level);
    if (mu <= M) {
      result.kept.insert(idx);
    } else if (mu <= last) {
      correction_layers[mu].push_back(idx);
    }
  }
  for (auto& [mu, indices] : correction_layers) {
    auto ordered = weighted_rearrangement(seq, indices, base.epsilon, base.src,
                                          base.alpha, base.beta);
    const std::uint64_t budget = plan.budget(M, mu, seq.domain());
    const std::size_t take = std::min<std::uint64_t>(budget, ordered.size());
    for (std::size_t n = 0; n < take; ++n) result.kept.insert(ordered[n]);
  }
  for (const auto& [idx, v] : seq.entries()) {
    if (result.kept.contains(idx)) {
      result.approximant.set(idx, v);
    } else {
      result.residual.set(idx, v);
    }
  }
  result.dof = result.kept.size();
  return result;
}

std::uint64_t dof_of(const LinearPlan& plan, int M, const DomainConfig& domain) {
  long double total = 0.0L;
  for (const LevelVec& j : enumerate_delta(plan.alpha, plan.beta, M, domain)) {
    total += std::exp2l(static_cast<long double>(level_sum(j)));
  }
  return to_count(total, "linear DOF count");
}

std::uint64_t dof_of(const NonlinearPlan& plan, int M, const DomainConfig& domain) {
  std::uint64_t total = dof_of(plan.base, M, domain);
  const int last = plan.last_layer(M);
  for (int mu = M + 1; mu <= last; ++mu) {
    total += plan.budget(M, mu, domain);
  }
  return total;
}

nlohmann::json plan_to_json(const LinearPlan& plan, int M) {
  return {{"src", to_json(plan.src)},
          {"tgt", to_json(plan.tgt)},
          {"epsilon", plan.epsilon},
          {"alpha", plan.alpha},
          {"beta", plan.beta},
          {"M", M}};
}

nlohmann::json plan_to_json(const NonlinearPlan& plan, int M, const DomainConfig& domain) {
  nlohmann::json j = plan_to_json(plan.base, M);
  j["kappa"] = plan.kappa;
  j["N_M"] = plan.last_layer(M);
  nlohmann::json budgets = nlohmann::json::array();
  for (int mu = M + 1; mu <= plan.last_layer(M); ++mu) {
    budgets.push_back({{"mu", mu}, {"m", plan.budget(M, mu, domain)}});
  }
  j["budgets"] = std::move(budgets);
  return j;
}

}  // namespace hybridseq
