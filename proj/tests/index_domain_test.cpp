#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hybridseq/layers.hpp"

using namespace hybridseq;

namespace {

// Independent membership oracle for the level sets.
bool in_delta_oracle(double alpha, double beta, int mu, const LevelVec& j) {
  return alpha * level_sum(j) - beta * level_max(j) <= mu + 1e-9;
}

std::vector<LevelVec> box_levels(int bound, int d) {
  std::vector<LevelVec> out;
  LevelVec j(d, 0);
  while (true) {
    out.push_back(j);
    int i = d - 1;
    while (i >= 0 && j[i] == bound) j[i--] = 0;
    if (i < 0) break;
    ++j[i];
  }
  return out;
}

}  // namespace

TEST_CASE("shift enumeration counts and order") {
  const DomainConfig d2{2};
  CHECK(enumerate_shifts({0, 0}, d2).size() == 1);

  const auto two = enumerate_shifts({1, 0}, d2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].shift == std::vector<std::int64_t>{0, 0});
  CHECK(two[1].shift == std::vector<std::int64_t>{1, 0});

  CHECK(enumerate_shifts({2, 1}, d2).size() == 8);

  const auto eight = enumerate_shifts({2, 1}, d2);
  CHECK(std::is_sorted(eight.begin(), eight.end(),
                       [](const Index& a, const Index& b) { return a.shift < b.shift; }));

  CHECK_THROWS_AS(enumerate_shifts({1, 1, 1}, d2), parameter_error);
}

TEST_CASE("shift enumeration resource guard") {
  CHECK_THROWS_AS(enumerate_shifts({40, 40}, DomainConfig{2}), resource_error);
}

TEST_CASE("delta enumeration examples") {
  const auto d2mu1 = enumerate_delta(1.0, 0.5, 1, DomainConfig{2});
  const std::set<LevelVec> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}};
  CHECK(std::set<LevelVec>(d2mu1.begin(), d2mu1.end()) == expected);

  for (int d : {1, 2, 3}) {
    const auto zero = enumerate_delta(1.0, 0.5, 0, DomainConfig{d});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == LevelVec(d, 0));
  }

  const auto d1mu2 = enumerate_delta(1.0, 0.5, 2, DomainConfig{1});
  CHECK(d1mu2 == std::vector<LevelVec>{{0}, {1}, {2}, {3}, {4}});

  CHECK_THROWS_AS(enumerate_delta(0.5, 0.5, 3, DomainConfig{1}), parameter_error);
  CHECK_THROWS_AS(enumerate_delta(0.5, 1.0, 3, DomainConfig{1}), parameter_error);
}

TEST_CASE("layer enumeration examples") {
  const auto l1 = enumerate_layer(1.0, 0.5, 1, DomainConfig{2});
  const std::set<LevelVec> expected{{1, 0}, {0, 1}, {2, 0}, {0, 2}};
  CHECK(std::set<LevelVec>(l1.begin(), l1.end()) == expected);

  CHECK(enumerate_layer(1.0, 0.5, 0, DomainConfig{2}) ==
        enumerate_delta(1.0, 0.5, 0, DomainConfig{2}));

  CHECK(enumerate_layer(1.0, 0.5, 2, DomainConfig{1}) == std::vector<LevelVec>{{3}, {4}});
}

TEST_CASE("nabla enumeration counts") {
  const DomainConfig d2{2};
  CHECK(enumerate_nabla_mu(1.0, 0.5, 0, d2).size() == 1);
  CHECK(enumerate_nabla_mu(1.0, 0.5, 1, d2).size() == 12);

  for (int mu = 0; mu <= 8; ++mu) {
    std::uint64_t expected = 0;
    for (const auto& j : enumerate_layer(1.0, 0.5, mu, d2)) {
      expected += std::uint64_t{1} << level_sum(j);
    }
    CHECK(enumerate_nabla_mu(1.0, 0.5, mu, d2).size() == expected);
    CHECK(static_cast<std::uint64_t>(nabla_mu_size(1.0, 0.5, mu, d2)) == expected);
  }
}

TEST_CASE("nabla growth rate stays within fixed constants") {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int mu = 1; mu <= 30; ++mu) {
    const double ratio = static_cast<double>(nabla_mu_size(1.0, 0.5, mu, DomainConfig{2})) /
                         std::exp2(mu / 0.5);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 16.0);
}

TEST_CASE("partition, membership, monotonicity") {
  for (int d = 1; d <= 3; ++d) {
    const DomainConfig domain{d};
    const int mu_max = 20;
    std::set<LevelVec> seen;
    std::size_t total = 0;
    for (int mu = 0; mu <= mu_max; ++mu) {
      for (const auto& j : enumerate_layer(1.0, 0.5, mu, domain)) {
        CHECK(seen.insert(j).second);  // disjoint
        ++total;
      }
    }
    const auto delta = enumerate_delta(1.0, 0.5, mu_max, domain);
    CHECK(total == delta.size());
    for (const auto& j : delta) CHECK(seen.contains(j));

    const int bound = delta_box_bound(1.0, 0.5, 6);
    const auto delta6 = enumerate_delta(1.0, 0.5, 6, domain);
    const std::set<LevelVec> d6(delta6.begin(), delta6.end());
    for (const auto& j : box_levels(bound, d)) {
      CHECK(d6.contains(j) == in_delta_oracle(1.0, 0.5, 6, j));
      CHECK(in_delta(1.0, 0.5, 6, j) == in_delta_oracle(1.0, 0.5, 6, j));
    }

    for (int mu = 0; mu < 10; ++mu) {
      const auto smaller = enumerate_delta(1.0, 0.5, mu, domain);
      const auto next = enumerate_delta(1.0, 0.5, mu + 1, domain);
      const std::set<LevelVec> larger(next.begin(), next.end());
      for (const auto& j : smaller) CHECK(larger.contains(j));
    }
  }
}

TEST_CASE("layer_of matches the defining inequality") {
  for (const auto& j : box_levels(8, 2)) {
    const int mu = layer_of(1.0, 0.5, j);
    const double v = layer_value(1.0, 0.5, j);
    CHECK(v <= mu + 1e-9);
    if (mu > 0) CHECK(v > mu - 1 + 1e-9);
  }
}

TEST_CASE("weighted_level_sum examples") {
  CHECK(weighted_level_sum(1.0, 0.5, 1.0, 2, DomainConfig{1}) ==
        doctest::Approx(31.0).epsilon(1e-12));

  // lower bound witness: the deepest axis level alone contributes 2^{delta*floor(mu/(a-b))}
  for (int mu = 4; mu <= 12; ++mu) {
    const int jstar = static_cast<int>(std::floor(mu / 0.5));
    CHECK(static_cast<double>(weighted_level_sum(1.0, 0.5, 1.0, mu, DomainConfig{2})) >=
          std::exp2(jstar));
  }

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int mu = 10; mu <= 30; ++mu) {
    // independent brute-force oracle over the full Delta scan
    long double oracle = 0.0L;
    for (const auto& j : enumerate_delta(1.0, 0.5, mu, DomainConfig{2})) {
      oracle += std::exp2l(static_cast<long double>(level_sum(j)));
    }
    const long double fast = weighted_level_sum(1.0, 0.5, 1.0, mu, DomainConfig{2});
    CHECK(static_cast<double>(fast) ==
          doctest::Approx(static_cast<double>(oracle)).epsilon(1e-10));
    const double ratio = static_cast<double>(fast / std::exp2l(mu / 0.5L));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.5);
  CHECK(hi < 8.0);

  CHECK_THROWS_AS(weighted_level_sum(1.0, 0.5, -1.0, 5, DomainConfig{1}), parameter_error);
  CHECK_THROWS_AS(weighted_level_sum(1.0, 0.0, 1.0, 5, DomainConfig{1}), parameter_error);
}

TEST_CASE("layer_decay_sum examples and uniform bound") {
  for (int mu = 2; mu <= 12; ++mu) {
    CHECK(static_cast<double>(layer_decay_sum(1.0, 0.5, 1.0, mu, DomainConfig{1})) ==
          doctest::Approx(static_cast<double>(
              enumerate_layer(1.0, 0.5, mu, DomainConfig{1}).size())));
  }

  // d=2, mu=2 value against direct enumeration
  long double oracle = 0.0L;
  for (const auto& j : enumerate_layer(1.0, 0.5, 2, DomainConfig{2})) {
    oracle += std::exp2l(-(level_sum(j) - level_max(j)));
  }
  CHECK(static_cast<double>(layer_decay_sum(1.0, 0.5, 1.0, 2, DomainConfig{2})) ==
        doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));

  // d=3 plateaus just below 24 (delta=1) and 70 (delta=0.5)
  for (double delta : {0.5, 1.0}) {
    double worst = 0.0;
    for (int mu = 2; mu <= 40; ++mu) {
      worst = std::max(worst, static_cast<double>(
                                  layer_decay_sum(1.0, 0.5, delta, mu, DomainConfig{3})));
    }
    CHECK(worst < 85.0);
  }
}

TEST_CASE("cardinality_profile examples") {
  const auto d2 = cardinality_profile(1.0, 0.5, 60, DomainConfig{2});
  REQUIRE(d2.size() == 61);
  CHECK(d2[1].delta_size == 5);
  CHECK(d2[1].layer_size == 4);

  const auto d1 = cardinality_profile(1.0, 0.5, 40, DomainConfig{1});
  for (const auto& row : d1) {
    CHECK(row.layer_size >= 1);
    CHECK(row.layer_size <= 3);
  }

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int mu = 5; mu <= 60; ++mu) {
    const double ratio = static_cast<double>(d2[mu].delta_size) / (mu * mu);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 4.0);

  // profile agrees with direct enumeration
  for (int mu = 0; mu <= 10; ++mu) {
    CHECK(d2[mu].delta_size == enumerate_delta(1.0, 0.5, mu, DomainConfig{2}).size());
    CHECK(d2[mu].layer_size == enumerate_layer(1.0, 0.5, mu, DomainConfig{2}).size());
  }
}

TEST_CASE("layer partition structure") {
  const auto part = make_layer_partition(1.0, 0.5, 8, DomainConfig{2});
  REQUIRE(part.layers.size() == 9);
  for (int mu = 0; mu <= 8; ++mu) {
    CHECK(part.layers[mu] == enumerate_layer(1.0, 0.5, mu, DomainConfig{2}));
  }
}
