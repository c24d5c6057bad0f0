#include "hybridseq/layers.hpp"

#include <cmath>
#include <string>

namespace hybridseq {

namespace {

// Applies the boundary tolerance: v <= bound up to relative slack.
bool leq_tol(double v, double bound) {
  return v <= bound + kLayerTol * std::max(1.0, std::abs(v));
}

// Visits every j in the box {0, ..., bound}^d.
template <typename F>
void scan_box(int d, int bound, F&& visit) {
  LevelVec j(d, 0);
  while (true) {
    visit(j);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++j[i] <= bound) break;
      j[i] = 0;
    }
    if (i < 0) break;
  }
}

}  // namespace

double layer_value(double alpha, double beta, const LevelVec& j) {
  return alpha * level_sum(j) - beta * level_max(j);
}

int layer_of(double alpha, double beta, const LevelVec& j) {
  const double v = layer_value(alpha, beta, j);
  if (leq_tol(v, 0.0)) return 0;
  const int mu = static_cast<int>(std::ceil(v - kLayerTol * std::max(1.0, std::abs(v))));
  return mu < 0 ? 0 : mu;
}

bool in_delta(double alpha, double beta, int mu, const LevelVec& j) {
  return leq_tol(layer_value(alpha, beta, j), static_cast<double>(mu));
}

void require_finite_layers(double alpha, double beta) {
  if (!(alpha > beta) || beta < 0.0) {
    throw parameter_error("layer sets are finite only for alpha > beta >= 0 (got alpha=" +
                          std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

int delta_box_bound(double alpha, double beta, int mu) {
  if (mu <= 0) return 0;
  return static_cast<int>(std::ceil(static_cast<double>(mu) / (alpha - beta)));
}

std::vector<LevelVec> enumerate_delta(double alpha, double beta, int mu,
                                      const DomainConfig& domain) {
  require_finite_layers(alpha, beta);
  if (mu < 0) throw parameter_error("mu must be nonnegative");
  std::vector<LevelVec> out;
  scan_box(domain.dimension, delta_box_bound(alpha, beta, mu), [&](const LevelVec& j) {
    if (in_delta(alpha, beta, mu, j)) out.push_back(j);
  });
  return out;  // box scan is lexicographic already
}

std::vector<LevelVec> enumerate_layer(double alpha, double beta, int mu,
                                      const DomainConfig& domain) {
  require_finite_layers(alpha, beta);
  if (mu < 0) throw parameter_error("mu must be nonnegative");
  std::vector<LevelVec> out;
  scan_box(domain.dimension, delta_box_bound(alpha, beta, mu), [&](const LevelVec& j) {
    if (layer_of(alpha, beta, j) == mu) out.push_back(j);
  });
  return out;
}

std::vector<Index> enumerate_nabla_mu(double alpha, double beta, int mu,
                                      const DomainConfig& domain) {
  std::vector<Index> out;
  for (const LevelVec& j : enumerate_layer(alpha, beta, mu, domain)) {
    auto shifts = enumerate_shifts(j, domain);
    out.insert(out.end(), shifts.begin(), shifts.end());
  }
  return out;
}

long double nabla_mu_size(double alpha, double beta, int mu, const DomainConfig& domain) {
  long double total = 0.0L;
  for (const LevelVec& j : enumerate_layer(alpha, beta, mu, domain)) {
    total += std::exp2l(static_cast<long double>(level_sum(j)));
  }
  return total;
}

long double weighted_level_sum(double alpha, double beta, double delta, int mu,
                               const DomainConfig& domain) {
  if (!(alpha > beta) || !(beta > 0.0)) {
    throw parameter_error("weighted_level_sum requires alpha > beta > 0");
  }
  if (!(delta > 0.0)) throw parameter_error("weighted_level_sum requires delta > 0");
  if (static_cast<double>(mu) < alpha - beta) {
    throw parameter_error("weighted_level_sum requires mu >= alpha - beta");
  }
  // compensated summation on top of long double
  long double sum = 0.0L, comp = 0.0L;
  scan_box(domain.dimension, delta_box_bound(alpha, beta, mu), [&](const LevelVec& j) {
    if (!in_delta(alpha, beta, mu, j)) return;
    const long double term = std::exp2l(static_cast<long double>(delta) * level_sum(j));
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  });
  return sum;
}

long double layer_decay_sum(double alpha, double beta, double delta, int mu,
                            const DomainConfig& domain) {
  require_finite_layers(alpha, beta);
  if (!(delta > 0.0)) throw parameter_error("layer_decay_sum requires delta > 0");
  long double sum = 0.0L;
  scan_box(domain.dimension, delta_box_bound(alpha, beta, mu), [&](const LevelVec& j) {
    if (layer_of(alpha, beta, j) != mu) return;
    sum += std::exp2l(-static_cast<long double>(delta) * (level_sum(j) - level_max(j)));
  });
  return sum;
}

std::vector<CardinalityRow> cardinality_profile(double alpha, double beta, int mu_max,
                                                const DomainConfig& domain) {
  require_finite_layers(alpha, beta);
  if (mu_max < 0) throw parameter_error("mu_max must be nonnegative");
  std::vector<CardinalityRow> rows(mu_max + 1);
  for (int mu = 0; mu <= mu_max; ++mu) rows[mu].mu = mu;
  scan_box(domain.dimension, delta_box_bound(alpha, beta, mu_max), [&](const LevelVec& j) {
    const int mu = layer_of(alpha, beta, j);
    if (mu <= mu_max) ++rows[mu].layer_size;
  });
  std::uint64_t cumulative = 0;
  for (auto& row : rows) {
    cumulative += row.layer_size;
    row.delta_size = cumulative;
  }
  return rows;
}

LayerPartition make_layer_partition(double alpha, double beta, int max_layer,
                                    const DomainConfig& domain) {
  require_finite_layers(alpha, beta);
  if (max_layer < 0) throw parameter_error("max_layer must be nonnegative");
  LayerPartition part{alpha, beta, max_layer, {}};
  part.layers.assign(max_layer + 1, {});
  scan_box(domain.dimension, delta_box_bound(alpha, beta, max_layer), [&](const LevelVec& j) {
    const int mu = layer_of(alpha, beta, j);
    if (mu <= max_layer) part.layers[mu].push_back(j);
  });
  return part;
}

}  // namespace hybridseq
