#include "hybridseq/widths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

namespace hybridseq {

double projection_error(const HybridSequence& seq, const std::set<Index>& keep,
                        const SpaceParams& tgt) {
  HybridSequence rest(seq.domain());
  for (const auto& [idx, v] : seq.entries()) {
    if (!keep.contains(idx)) rest.set(idx, v);
  }
  return quasinorm(rest, tgt);
}

std::vector<std::size_t> stechkin_select(const std::vector<double>& values,
                                         std::size_t m) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  order.resize(std::min(m, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

StechkinCheck stechkin_check(const std::vector<double>& values,
                             const std::set<std::size_t>& lambda, double p0, double p1) {
  if (!(p0 > 0.0) || !(p1 > 0.0) || p0 > p1) {
    throw parameter_error("stechkin_check requires 0 < p0 <= p1");
  }
  double min_on = kInf;
  double max_off = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (lambda.contains(i)) {
      min_on = std::min(min_on, a);
    } else {
      max_off = std::max(max_off, a);
    }
  }
  if (!lambda.empty() && min_on < max_off) {
    throw parameter_error("stechkin_check: dominance precondition violated");
  }

  auto lp = [&](double p, bool off_only) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (off_only && lambda.contains(i)) continue;
      const double a = std::abs(values[i]);
      if (std::isinf(p)) {
        acc = std::max(acc, a);
      } else {
        acc += std::pow(a, p);
      }
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
  };

  StechkinCheck out;
  out.lhs = lp(p1, true);
  out.rhs = std::pow(static_cast<double>(lambda.size()) + 1.0, -(inv(p0) - inv(p1))) *
            lp(p0, false);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

FoolingSpec FoolingSpec::make(const SpaceParams& src, const SpaceParams& tgt, int M,
                              int dimension) {
  FoolingSpec spec;
  spec.src = src;
  spec.tgt = tgt;
  spec.M = M;
  spec.star_level.assign(dimension, 0);
  spec.star_level[0] = M;
  spec.amplitude = std::exp2(-(src.r - inv(src.p) + src.s) * M);
  return spec;
}

HybridSequence fooling_sequence(const FoolingSpec& spec, const DomainConfig& domain,
                                const std::set<Index>& excluded) {
  require_dimension(spec.star_level, domain);
  const std::int64_t range = std::int64_t{1} << spec.M;
  if (static_cast<std::int64_t>(excluded.size()) >= range) {
    // the excluded set could cover every shift of the star level
    std::int64_t covered = 0;
    for (const Index& idx : excluded) {
      if (idx.level == spec.star_level) ++covered;
    }
    if (covered >= range) {
      throw parameter_error("fooling_sequence: excluded set exhausts the star-level shifts");
    }
  }
  Index star{spec.star_level, std::vector<std::int64_t>(domain.dimension, 0)};
  // smallest lexicographic free shift along the first coordinate
  for (std::int64_t k = 0; k < range; ++k) {
    star.shift[0] = k;
    if (!excluded.contains(star)) break;
    if (k == range - 1) {
      throw parameter_error("fooling_sequence: excluded set exhausts the star-level shifts");
    }
  }
  HybridSequence seq(domain);
  seq.set(star, spec.amplitude);
  return seq;
}

WidthEstimate exhaustive_best_m(const HybridSequence& seq, std::size_t m,
                                const SpaceParams& tgt) {
  const std::size_t n = seq.support_size();
  if (n > 14 || m > 4) {
    throw resource_error("exhaustive_best_m limited to support <= 14 and m <= 4");
  }
  std::vector<Index> support;
  support.reserve(n);
  for (const auto& [idx, v] : seq.entries()) support.push_back(idx);

  const std::size_t k = std::min(m, n);
  double best = quasinorm(seq, tgt);  // empty selection
  if (k > 0) {
    std::vector<bool> mask(n, false);
    std::fill(mask.end() - k, mask.end(), true);
    do {
      std::set<Index> keep;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) keep.insert(support[i]);
      }
      best = std::min(best, projection_error(seq, keep, tgt));
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return {m, best, WidthKind::sigma, WidthMethod::exhaustive};
}

HybridSequence stress_family(const SpaceParams& src, const DomainConfig& domain,
                             double alpha, double beta, int depth,
                             std::uint64_t seed, int shift_cap) {
  if (shift_cap < 1) throw parameter_error("shift_cap must be positive");
  std::mt19937_64 rng(seed);
  HybridSequence seq(domain);
  for (const LevelVec& j : enumerate_delta(alpha, beta, depth, domain)) {
    const int l1 = level_sum(j);
    const std::uint64_t avail = l1 < 62 ? (std::uint64_t{1} << l1) : ~std::uint64_t{0};
    const std::uint64_t n = std::min<std::uint64_t>(shift_cap, avail);

    std::vector<std::vector<std::int64_t>> shifts;
    if (n == avail) {
      for (const Index& idx : enumerate_shifts(j, domain)) shifts.push_back(idx.shift);
    } else {
      std::set<std::vector<std::int64_t>> picked;
      while (picked.size() < n) {
        std::vector<std::int64_t> k(domain.dimension);
        for (int i = 0; i < domain.dimension; ++i) {
          k[i] = static_cast<std::int64_t>(rng() & ((std::uint64_t{1} << j[i]) - 1));
        }
        picked.insert(std::move(k));
      }
      shifts.assign(picked.begin(), picked.end());
    }
    // every level contributes exactly 1 to the source b-norm with q = inf
    const double magnitude =
        std::exp2(-((src.r - inv(src.p)) * l1 + src.s * level_max(j))) *
        std::pow(static_cast<double>(n), -inv(src.p));
    for (const auto& k : shifts) seq.set(Index{j, k}, magnitude);
  }
  SpaceParams sup_params = src;
  sup_params.kind = SpaceKind::b;
  sup_params.q = kInf;
  const double norm = b_quasinorm(seq, sup_params);
  if (norm > 0.0) seq.scale(1.0 / norm);
  return seq;
}

}  // namespace hybridseq
