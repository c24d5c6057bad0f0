#pragma once

#include <limits>

#include "hybridseq/sequence.hpp"

namespace hybridseq {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SpaceKind { b, f };

/// Parameter tuple of one hybrid sequence space h^{r,s}_{p,q}x.
/// p, q live in (0, inf]; r is the dominating mixed smoothness and s
/// the isotropic smoothness. f-type requires p < inf.
struct SpaceParams {
  SpaceKind kind = SpaceKind::b;
  double p = 2.0;
  double q = 2.0;
  double r = 0.0;
  double s = 0.0;
};

void validate(const SpaceParams& params);

/// 1/p with the convention 1/inf = 0.
double inv(double p);

/// Weighted l_p sum over shifts of one level followed by weighted l_q
/// aggregation over levels:
///   [ sum_j 2^{q((r-1/p)|j|_1 + s|j|_inf)} ( sum_k |a_{j,k}|^p )^{q/p} ]^{1/q},
/// with suprema when p and/or q are infinite.
double b_quasinorm(const HybridSequence& seq, const SpaceParams& params);

/// L_p norm over the unit cube of the pointwise l_q aggregate
///   x -> ( sum_j 2^{q(r|j|_1 + s|j|_inf)} | sum_k a_{j,k} chi^{j,k}(x) |^q )^{1/q}.
/// The integrand is piecewise constant on the dyadic grid spanned by the
/// deepest support level per coordinate, so the norm is an exact finite
/// cell sum. Throws resource_error when the cell count exceeds the budget.
double f_quasinorm(const HybridSequence& seq, const SpaceParams& params,
                   std::uint64_t cell_budget = (std::uint64_t{1} << 24));

/// Dispatch on params.kind.
double quasinorm(const HybridSequence& seq, const SpaceParams& params,
                 std::uint64_t cell_budget = (std::uint64_t{1} << 24));

/// Embedding parameters of a source/target pair:
///   alpha_emb = r0 - r1 - (1/p0 - 1/p1)_+ , beta_emb = s1 - s0.
struct EmbeddingParams {
  double alpha_emb = 0.0;
  double beta_emb = 0.0;
};

EmbeddingParams embedding_gap(const SpaceParams& src, const SpaceParams& tgt);

enum class EmbeddingVerdict { continuous, not_continuous, boundary_case };

/// Sufficient conditions: alpha >= 0 > beta, or alpha > beta >= 0, or
/// 0 > alpha*d > beta. Equality cases resolve through the fine-parameter
/// test q0 <= q1 for b-to-b pairs and report boundary_case otherwise.
EmbeddingVerdict check_embedding(const SpaceParams& src, const SpaceParams& tgt,
                                 int dimension);

nlohmann::json to_json(const SpaceParams& params);
SpaceParams space_params_from_json(const nlohmann::json& j);

}  // namespace hybridseq
