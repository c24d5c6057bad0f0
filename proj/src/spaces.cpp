#include "hybridseq/spaces.hpp"

#include <cmath>
#include <map>
#include <string>

namespace hybridseq {

void validate(const SpaceParams& params) {
  if (!(params.p > 0.0) || !(params.q > 0.0)) {
    throw parameter_error("space parameters require p, q in (0, inf]");
  }
  if (params.kind == SpaceKind::f && !(params.p < kInf)) {
    throw parameter_error("f-type spaces require p < inf");
  }
  if (!std::isfinite(params.r) || !std::isfinite(params.s)) {
    throw parameter_error("smoothness parameters r, s must be finite");
  }
}

double inv(double p) {
  return std::isinf(p) ? 0.0 : 1.0 / p;
}

namespace {

// Weighted l_p aggregation helper: accumulates |x|^p, or the max for p = inf.
struct LpAccumulator {
  double p;
  double acc = 0.0;

  void add(double x) {
    x = std::abs(x);
    if (std::isinf(p)) {
      acc = std::max(acc, x);
    } else {
      acc += std::pow(x, p);
    }
  }
  double norm() const { return std::isinf(p) ? acc : std::pow(acc, 1.0 / p); }
};

double level_weight_b(const SpaceParams& params, const LevelVec& j) {
  return std::exp2((params.r - inv(params.p)) * level_sum(j) + params.s * level_max(j));
}

}  // namespace

double b_quasinorm(const HybridSequence& seq, const SpaceParams& params) {
  validate(params);
  LpAccumulator outer{params.q};
  auto it = seq.entries().begin();
  const auto end = seq.entries().end();
  // entries are ordered by (level, shift), so levels form contiguous runs
  while (it != end) {
    const LevelVec& j = it->first.level;
    LpAccumulator inner{params.p};
    for (; it != end && it->first.level == j; ++it) inner.add(it->second);
    outer.add(level_weight_b(params, j) * inner.norm());
  }
  return outer.norm();
}

double f_quasinorm(const HybridSequence& seq, const SpaceParams& params,
                   std::uint64_t cell_budget) {
  validate(params);
  if (!(params.p < kInf)) throw parameter_error("f_quasinorm requires p < inf");
  if (seq.empty()) return 0.0;
  const int d = seq.dimension();

  // deepest support level per coordinate fixes the exact evaluation grid
  LevelVec grid_level(d, 0);
  for (const auto& [idx, v] : seq.entries()) {
    for (int i = 0; i < d; ++i) grid_level[i] = std::max(grid_level[i], idx.level[i]);
  }
  std::uint64_t total_level = 0;
  for (int i = 0; i < d; ++i) total_level += grid_level[i];
  if (total_level >= 60 || (std::uint64_t{1} << total_level) > cell_budget) {
    throw resource_error("f_quasinorm: support depth J*=" + std::to_string(level_max(grid_level)) +
                         " needs 2^" + std::to_string(total_level) +
                         " cells, over the cell budget");
  }

  // per-level shift lookup
  struct LevelData {
    LevelVec j;
    double weight;  // 2^{r|j|_1 + s|j|_inf}
    std::map<std::vector<std::int64_t>, double> coeffs;
  };
  std::vector<LevelData> levels;
  for (const auto& [idx, v] : seq.entries()) {
    if (levels.empty() || levels.back().j != idx.level) {
      levels.push_back({idx.level,
                        std::exp2(params.r * level_sum(idx.level) +
                                  params.s * level_max(idx.level)),
                        {}});
    }
    levels.back().coeffs.emplace(idx.shift, v);
  }

  const double cell_volume = std::exp2(-static_cast<double>(total_level));
  std::vector<std::int64_t> cell(d, 0);
  std::vector<std::int64_t> k(d, 0);
  double acc_p = 0.0;
  while (true) {
    LpAccumulator pointwise{params.q};
    for (const auto& lvl : levels) {
      // exactly one box of each level covers the cell
      for (int i = 0; i < d; ++i) k[i] = cell[i] >> (grid_level[i] - lvl.j[i]);
      auto it = lvl.coeffs.find(k);
      if (it != lvl.coeffs.end()) pointwise.add(lvl.weight * it->second);
    }
    const double s = pointwise.norm();
    acc_p += std::pow(s, params.p);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++cell[i] < (std::int64_t{1} << grid_level[i])) break;
      cell[i] = 0;
    }
    if (i < 0) break;
  }
  return std::pow(acc_p * cell_volume, 1.0 / params.p);
}

double quasinorm(const HybridSequence& seq, const SpaceParams& params,
                 std::uint64_t cell_budget) {
  return params.kind == SpaceKind::b ? b_quasinorm(seq, params)
                                     : f_quasinorm(seq, params, cell_budget);
}

EmbeddingParams embedding_gap(const SpaceParams& src, const SpaceParams& tgt) {
  const double gap = std::max(0.0, inv(src.p) - inv(tgt.p));
  return {src.r - tgt.r - gap, tgt.s - src.s};
}

EmbeddingVerdict check_embedding(const SpaceParams& src, const SpaceParams& tgt,
                                 int dimension) {
  const auto [a, b] = embedding_gap(src, tgt);
  const int d = dimension;
  if ((a >= 0.0 && b < 0.0) || (a > b && b >= 0.0) || (0.0 > a * d && a * d > b)) {
    return EmbeddingVerdict::continuous;
  }
  const bool equality_case = (a == b && a >= 0.0) || (a < 0.0 && a * d == b);
  if (equality_case) {
    if (src.kind == SpaceKind::b && tgt.kind == SpaceKind::b) {
      return src.q <= tgt.q ? EmbeddingVerdict::continuous
                            : EmbeddingVerdict::not_continuous;
    }
    return EmbeddingVerdict::boundary_case;
  }
  return EmbeddingVerdict::not_continuous;
}

nlohmann::json to_json(const SpaceParams& params) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  return {{"kind", params.kind == SpaceKind::b ? "b" : "f"},
          {"p", num(params.p)},
          {"q", num(params.q)},
          {"r", params.r},
          {"s", params.s}};
}

SpaceParams space_params_from_json(const nlohmann::json& j) {
  auto num = [&](const char* key, double fallback) -> double {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf" || s == "infinity") return kInf;
      throw usage_error(std::string("space parameter '") + key + "' must be a number or \"inf\"");
    }
    return v.get<double>();
  };
  SpaceParams params;
  if (j.contains("kind")) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "b") {
      params.kind = SpaceKind::b;
    } else if (kind == "f") {
      params.kind = SpaceKind::f;
    } else {
      throw usage_error("space kind must be \"b\" or \"f\"");
    }
  }
  params.p = num("p", params.p);
  params.q = num("q", params.q);
  params.r = num("r", params.r);
  params.s = num("s", params.s);
  validate(params);
  return params;
}

}  // namespace hybridseq
