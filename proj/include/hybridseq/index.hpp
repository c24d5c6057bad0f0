#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "hybridseq/errors.hpp"

namespace hybridseq {

/// Resolution vector j with one nonnegative dyadic level per coordinate.
using LevelVec = std::vector<int>;

/// |j|_1, the total resolution.
int level_sum(const LevelVec& j);

/// |j|_inf, the maximal per-coordinate resolution.
int level_max(const LevelVec& j);

/// Translation grid on the half-open unit cube: the shift range for
/// level j is {0, ..., 2^{j_i} - 1} per coordinate, so each level j
/// carries exactly 2^{|j|_1} shifts.
struct DomainConfig {
  int dimension = 1;

  friend bool operator==(const DomainConfig&, const DomainConfig&) = default;
};

/// A single dyadic index lambda = (j, k).
struct Index {
  LevelVec level;
  std::vector<std::int64_t> shift;

  friend auto operator<=>(const Index&, const Index&) = default;
};

/// Number of admissible shifts at level j, i.e. 2^{|j|_1}.
std::uint64_t shift_count(const LevelVec& j);

/// True iff 0 <= k_i < 2^{j_i} for all coordinates.
bool shift_in_range(const Index& idx);

void require_dimension(const LevelVec& j, const DomainConfig& domain);

/// All indices (j, k) with k in the shift grid of level j, ordered
/// lexicographically by k. Throws parameter_error on dimension mismatch
/// and resource_error when 2^{|j|_1} is too large to materialize.
std::vector<Index> enumerate_shifts(const LevelVec& j, const DomainConfig& domain,
                                    std::uint64_t max_count = (std::uint64_t{1} << 26));

}  // namespace hybridseq
