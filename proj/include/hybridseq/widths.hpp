#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hybridseq/approx.hpp"

namespace hybridseq {

/// Error of coefficient copying on the kept set: the quasi-norm of the
/// input restricted to the complement of `keep`. By the lattice property
/// this equals the infimum over all coefficient choices on `keep`.
double projection_error(const HybridSequence& seq, const std::set<Index>& keep,
                        const SpaceParams& tgt);

/// Positions of the m largest magnitudes, ties broken by position.
std::vector<std::size_t> stechkin_select(const std::vector<double>& values,
                                         std::size_t m);

struct StechkinCheck {
  double lhs = 0.0;   // l_{p1} tail norm off Lambda
  double rhs = 0.0;   // (|Lambda|+1)^{-(1/p0-1/p1)} * l_{p0} full norm
  bool holds = false;
};

/// Evaluates both sides of Stechkin's inequality. The dominance
/// precondition (every |a_lambda| on Lambda at least every magnitude off
/// Lambda) is checked, not assumed.
StechkinCheck stechkin_check(const std::vector<double>& values,
                             const std::set<std::size_t>& lambda, double p0, double p1);

/// Single-coefficient adversary input against a fixed index selection:
/// amplitude 2^{-(r0-1/p0+s0)M} placed at level (M, 0, ..., 0) on the
/// lexicographically smallest shift outside the excluded set.
struct FoolingSpec {
  SpaceParams src;
  SpaceParams tgt;
  int M = 1;
  LevelVec star_level;    // (M, 0, ..., 0)
  double amplitude = 0.0; // 2^{-(r0-1/p0+s0) M}

  static FoolingSpec make(const SpaceParams& src, const SpaceParams& tgt, int M,
                          int dimension);
};

HybridSequence fooling_sequence(const FoolingSpec& spec, const DomainConfig& domain,
                                const std::set<Index>& excluded = {});

enum class WidthKind { sigma, d, zeta };
enum class WidthMethod { algorithmic_upper, fooling_lower, exhaustive };

struct WidthEstimate {
  std::uint64_t m = 0;
  double value = 0.0;
  WidthKind kind = WidthKind::sigma;
  WidthMethod method = WidthMethod::exhaustive;
};

/// Exact best m-term error on tiny inputs: minimum of projection_error
/// over all support subsets of size <= m. Limits: support <= 14, m <= 4.
WidthEstimate exhaustive_best_m(const HybridSequence& seq, std::size_t m,
                                const SpaceParams& tgt);

/// Equalized layer profile for rate sweeps: every level j in
/// Delta_depth(alpha, beta) carries mass on a seeded subset of at most
/// `shift_cap` shifts, scaled so each level contributes exactly 1 to the
/// source b-quasi-norm with q = inf, then normalized to source norm 1.
HybridSequence stress_family(const SpaceParams& src, const DomainConfig& domain,
                             double alpha, double beta, int depth,
                             std::uint64_t seed, int shift_cap = 32);

}  // namespace hybridseq
