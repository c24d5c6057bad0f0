#pragma once

#include <cstdint>
#include <vector>

#include "hybridseq/index.hpp"

namespace hybridseq {

/// Relative tolerance applied to the layer boundary comparisons so that
/// dyadic-rational (alpha, beta) never flicker between adjacent layers.
inline constexpr double kLayerTol = 1e-12;

/// alpha * |j|_1 - beta * |j|_inf, the quantity that defines the layers.
double layer_value(double alpha, double beta, const LevelVec& j);

/// The unique mu >= 0 with j in the layer L_mu: mu = 0 when the layer
/// value is <= 0, otherwise the smallest integer bounding it from above.
int layer_of(double alpha, double beta, const LevelVec& j);

bool in_delta(double alpha, double beta, int mu, const LevelVec& j);

void require_finite_layers(double alpha, double beta);

/// The full index box {0, ..., bound}^d that contains Delta_mu, with
/// bound = ceil(mu / (alpha - beta)).
int delta_box_bound(double alpha, double beta, int mu);

/// All levels j with alpha |j|_1 - beta |j|_inf <= mu, lexicographically
/// sorted. Requires alpha > beta >= 0, else the set is infinite.
std::vector<LevelVec> enumerate_delta(double alpha, double beta, int mu,
                                      const DomainConfig& domain);

/// The layer L_mu = Delta_mu \ Delta_{mu-1} (L_0 = Delta_0).
std::vector<LevelVec> enumerate_layer(double alpha, double beta, int mu,
                                      const DomainConfig& domain);

/// All indices (j, k) with j in L_mu, concatenated over the layer in
/// lexicographic level order.
std::vector<Index> enumerate_nabla_mu(double alpha, double beta, int mu,
                                      const DomainConfig& domain);

/// Sum_{j in L_mu} 2^{|j|_1} without materializing any shifts.
long double nabla_mu_size(double alpha, double beta, int mu, const DomainConfig& domain);

/// Sum_{j in Delta_mu} 2^{delta |j|_1}, accumulated in extended precision.
/// Requires alpha > beta > 0, delta > 0 and mu >= alpha - beta.
long double weighted_level_sum(double alpha, double beta, double delta, int mu,
                               const DomainConfig& domain);

/// Sum_{j in L_mu} 2^{-delta (|j|_1 - |j|_inf)}; uniformly bounded in mu.
long double layer_decay_sum(double alpha, double beta, double delta, int mu,
                            const DomainConfig& domain);

struct CardinalityRow {
  int mu = 0;
  std::uint64_t delta_size = 0;
  std::uint64_t layer_size = 0;
};

/// Exact |Delta_mu| and |L_mu| for mu = 0 ... mu_max, via one box scan.
std::vector<CardinalityRow> cardinality_profile(double alpha, double beta, int mu_max,
                                                const DomainConfig& domain);

/// Materialized layer decomposition L_0, ..., L_{max_layer}.
struct LayerPartition {
  double alpha = 0.0;
  double beta = 0.0;
  int max_layer = 0;
  std::vector<std::vector<LevelVec>> layers;
};

LayerPartition make_layer_partition(double alpha, double beta, int max_layer,
                                    const DomainConfig& domain);

}  // namespace hybridseq
