#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hybridseq/layers.hpp"
#include "hybridseq/spaces.hpp"

namespace hybridseq {

/// All derived parameters of the layer-truncation algorithm: the layer
/// slope pair (alpha, beta) comes from the source/target gap shifted by
/// epsilon, with the integrability gap clamped to zero when p1 <= p0.
struct LinearPlan {
  SpaceParams src;
  SpaceParams tgt;
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Linear plan plus the correction-layer machinery: the window exponent
/// kappa, the last correction layer N(M), and the per-layer budgets.
struct NonlinearPlan {
  LinearPlan base;
  double kappa = 0.0;

  int last_layer(int M) const;                          // N_M
  std::uint64_t budget(int M, int mu,
                       const DomainConfig& domain) const;  // m_{M,mu}
};

struct ApproxResult {
  std::set<Index> kept;
  HybridSequence approximant;
  HybridSequence residual;
  std::uint64_t dof = 0;
};

/// Requires r0 - r1 - (1/p0 - 1/p1)_+ > s1 - s0 > 0. epsilon defaults to
/// (s1 - s0) / 2 and must lie in (0, s1 - s0).
LinearPlan make_linear_plan(const SpaceParams& src, const SpaceParams& tgt,
                            std::optional<double> epsilon = std::nullopt);

/// Keeps exactly the coefficients with level in Delta_M(alpha, beta).
ApproxResult apply_linear(const LinearPlan& plan, int M, const HybridSequence& seq);

/// Additionally requires p0 < p1 (otherwise the linear algorithm is
/// already optimal; a parameter_error says so). kappa defaults to the
/// midpoint of its open admissibility window.
NonlinearPlan make_nonlinear_plan(const SpaceParams& src, const SpaceParams& tgt,
                                  std::optional<double> epsilon = std::nullopt,
                                  std::optional<double> kappa = std::nullopt);

/// Width of the open kappa window (1/(alpha-beta), 1/(alpha-beta) + 1/(1/p0-1/p1)).
std::pair<double, double> kappa_window(const LinearPlan& base);

/// Orders the given indices (all from one layer) by descending weight
///   2^{-(|j|_1-|j|_inf) eps/2} * 2^{(r0-1/p0)|j|_1 + s0 |j|_inf} * |a_{j,k}|,
/// ties broken lexicographically on (j, k).
std::vector<Index> weighted_rearrangement(const HybridSequence& seq,
                                          const std::vector<Index>& layer_indices,
                                          double epsilon, const SpaceParams& src,
                                          double alpha, double beta);

/// Linear part on Delta_M plus, per layer mu in (M, N_M], the first
/// m_{M,mu} support indices in weighted-rearrangement order.
ApproxResult apply_nonlinear(const NonlinearPlan& plan, int M, const HybridSequence& seq);

/// Worst-case retained-index count, independent of any input:
/// sum_{j in Delta_M} 2^{|j|_1}, plus the correction budgets for B_M.
std::uint64_t dof_of(const LinearPlan& plan, int M, const DomainConfig& domain);
std::uint64_t dof_of(const NonlinearPlan& plan, int M, const DomainConfig& domain);

nlohmann::json plan_to_json(const LinearPlan& plan, int M);
nlohmann::json plan_to_json(const NonlinearPlan& plan, int M, const DomainConfig& domain);

}  // namespace hybridseq
