#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hybridseq/widths.hpp"

using namespace hybridseq;

namespace {

const SpaceParams kSrc{SpaceKind::b, 1.0, kInf, 2.0, 0.0};
const SpaceParams kTgt{SpaceKind::b, 2.0, 2.0, 0.0, 1.0};

double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1p-53; }

HybridSequence random_sequence(std::mt19937_64& rng, int d, int max_level, int count) {
  HybridSequence seq(DomainConfig{d});
  while (static_cast<int>(seq.support_size()) < count) {
    Index idx;
    idx.level.resize(d);
    idx.shift.resize(d);
    for (int i = 0; i < d; ++i) {
      idx.level[i] = static_cast<int>(rng() % (max_level + 1));
      idx.shift[i] = static_cast<std::int64_t>(rng() % (std::uint64_t{1} << idx.level[i]));
    }
    seq.set(idx, uniform(rng) * 2.0 - 1.0);
  }
  return seq;
}

}  // namespace

TEST_CASE("projection error edge cases") {
  std::mt19937_64 rng(53);
  const HybridSequence seq = random_sequence(rng, 2, 3, 10);
  std::set<Index> all;
  for (const auto& [idx, v] : seq.entries()) all.insert(idx);
  CHECK(projection_error(seq, all, kTgt) == 0.0);
  CHECK(projection_error(seq, {}, kTgt) == quasinorm(seq, kTgt));
}

TEST_CASE("stechkin selection matches a full sort") {
  CHECK(stechkin_select({1.0, 0.5, 0.25}, 1) == std::vector<std::size_t>{0});
  CHECK(stechkin_select({0.7, 0.7, 0.7}, 2) == std::vector<std::size_t>{0, 1});

  std::mt19937_64 rng(59);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> values(1 + rng() % 40);
    for (double& v : values) v = uniform(rng) * 2 - 1;
    const std::size_t m = rng() % (values.size() + 1);
    const auto selected = stechkin_select(values, m);

    // oracle: full index sort by (magnitude desc, position asc)
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ma = std::abs(values[a]), mb = std::abs(values[b]);
      return ma != mb ? ma > mb : a < b;
    });
    order.resize(std::min(m, order.size()));
    std::sort(order.begin(), order.end());
    CHECK(selected == order);
  }
}

TEST_CASE("stechkin check hand example") {
  const std::vector<double> values{1.0, 0.5, 0.25};
  const auto check = stechkin_check(values, {0}, 1.0, 2.0);
  CHECK(check.lhs == doctest::Approx(std::sqrt(0.3125)));
  CHECK(check.rhs == doctest::Approx(std::pow(2.0, -0.5) * 1.75));
  CHECK(check.holds);

  // p0 = p1: rhs degenerates to the full norm
  const auto equal = stechkin_check(values, {0}, 1.0, 1.0);
  CHECK(equal.rhs == doctest::Approx(1.75));
  CHECK(equal.holds);

  // p1 = inf: lhs is the max off Lambda
  const auto inf = stechkin_check(values, {0}, 1.0, kInf);
  CHECK(inf.lhs == doctest::Approx(0.5));
  CHECK(inf.holds);

  CHECK_THROWS_AS(stechkin_check(values, {2}, 1.0, 2.0), parameter_error);
  CHECK_THROWS_AS(stechkin_check(values, {0}, 2.0, 1.0), parameter_error);
}

TEST_CASE("fooling spec examples") {
  const auto spec = FoolingSpec::make(kSrc, kTgt, 4, 2);
  CHECK(spec.amplitude == doctest::Approx(std::exp2(-4)));
  CHECK(spec.star_level == LevelVec{4, 0});

  const auto seq = fooling_sequence(spec, DomainConfig{2});
  REQUIRE(seq.support_size() == 1);

  // target norm with q1 = inf: 2^{-4} * 2^{(0 - 1/2 + 1)*4} = 2^{-2}
  SpaceParams tgt_sup = kTgt;
  tgt_sup.q = kInf;
  CHECK(quasinorm(seq, tgt_sup) == doctest::Approx(std::exp2(-2)).epsilon(1e-12));

  // source norm with q = min(p0, q0) = 1 is exactly 1
  SpaceParams src_fine = kSrc;
  src_fine.q = 1.0;
  CHECK(quasinorm(seq, src_fine) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fooling sequence avoids the excluded set") {
  const auto spec = FoolingSpec::make(kSrc, kTgt, 3, 2);
  std::set<Index> excluded;
  for (std::int64_t k = 0; k < 5; ++k) {
    excluded.insert(Index{{3, 0}, {k, 0}});
  }
  const auto seq = fooling_sequence(spec, DomainConfig{2}, excluded);
  CHECK(seq.entries().begin()->first.shift[0] == 5);

  // exact lower-bound value whenever the star index is missed
  CHECK(projection_error(seq, excluded, kTgt) == quasinorm(seq, kTgt));

  for (std::int64_t k = 5; k < 8; ++k) {
    excluded.insert(Index{{3, 0}, {k, 0}});
  }
  CHECK_THROWS_AS(fooling_sequence(spec, DomainConfig{2}, excluded), parameter_error);
}

TEST_CASE("exhaustive best-m oracle") {
  std::mt19937_64 rng(61);
  const HybridSequence seq = random_sequence(rng, 2, 3, 10);

  CHECK(exhaustive_best_m(seq, 0, kTgt).value == quasinorm(seq, kTgt));

  // m >= support: everything can be kept
  const HybridSequence tiny = random_sequence(rng, 2, 2, 3);
  CHECK(exhaustive_best_m(tiny, 4, kTgt).value == 0.0);

  // m = 2 against a separately coded brute-force pair loop
  std::vector<Index> support;
  for (const auto& [idx, v] : seq.entries()) support.push_back(idx);
  double best = quasinorm(seq, kTgt);
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      best = std::min(best, projection_error(seq, {support[a], support[b]}, kTgt));
    }
  }
  CHECK(exhaustive_best_m(seq, 2, kTgt).value == doctest::Approx(best).epsilon(1e-14));

  CHECK_THROWS_AS(exhaustive_best_m(random_sequence(rng, 2, 3, 15), 2, kTgt),
                  resource_error);
  CHECK_THROWS_AS(exhaustive_best_m(seq, 5, kTgt), resource_error);
}

TEST_CASE("stress family construction") {
  const HybridSequence flat = stress_family(kSrc, DomainConfig{2}, 1.0, 0.5, 0, 7);
  CHECK(flat.support_size() == 1);

  SpaceParams src_sup = kSrc;
  src_sup.q = kInf;
  for (int depth : {0, 4, 10}) {
    const HybridSequence seq = stress_family(kSrc, DomainConfig{2}, 1.0, 0.5, depth, 7);
    CHECK(b_quasinorm(seq, src_sup) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(seq == stress_family(kSrc, DomainConfig{2}, 1.0, 0.5, depth, 7));
  }

  // different seeds give different shift selections at capped levels
  const auto a = stress_family(kSrc, DomainConfig{2}, 1.0, 0.5, 8, 1);
  const auto b = stress_family(kSrc, DomainConfig{2}, 1.0, 0.5, 8, 2);
  CHECK(a != b);
}

TEST_CASE("lattice optimality spot check") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 100; ++t) {
    const HybridSequence seq = random_sequence(rng, 2, 3, 8);
    std::set<Index> keep;
    for (const auto& [idx, v] : seq.entries()) {
      if (uniform(rng) < 0.5) keep.insert(idx);
    }
    const double copy_error = projection_error(seq, keep, kTgt);
    for (int p = 0; p < 20; ++p) {
      HybridSequence competitor(seq.domain());
      for (const auto& [idx, v] : seq.entries()) {
        competitor.set(idx, keep.contains(idx) ? uniform(rng) * 4 - 2 : v);
      }
      CHECK(copy_error <= quasinorm(competitor, kTgt) * (1 + 1e-12));
    }
  }
}
