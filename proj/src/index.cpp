#include "hybridseq/index.hpp"

#include <numeric>
#include <string>

namespace hybridseq {

int level_sum(const LevelVec& j) {
  return std::accumulate(j.begin(), j.end(), 0);
}

int level_max(const LevelVec& j) {
  int m = 0;
  for (int ji : j) m = std::max(m, ji);
  return m;
}

std::uint64_t shift_count(const LevelVec& j) {
  return std::uint64_t{1} << level_sum(j);
}

bool shift_in_range(const Index& idx) {
  if (idx.shift.size() != idx.level.size()) return false;
  for (std::size_t i = 0; i < idx.level.size(); ++i) {
    if (idx.level[i] < 0) return false;
    const std::int64_t range = std::int64_t{1} << idx.level[i];
    if (idx.shift[i] < 0 || idx.shift[i] >= range) return false;
  }
  return true;
}

void require_dimension(const LevelVec& j, const DomainConfig& domain) {
  if (static_cast<int>(j.size()) != domain.dimension) {
    throw parameter_error("level vector has dimension " + std::to_string(j.size()) +
                          ", domain expects " + std::to_string(domain.dimension));
  }
  for (int ji : j) {
    if (ji < 0) throw parameter_error("negative level entry");
  }
}

std::vector<Index> enumerate_shifts(const LevelVec& j, const DomainConfig& domain,
                                    std::uint64_t max_count) {
  require_dimension(j, domain);
  if (level_sum(j) >= 63 || shift_count(j) > max_count) {
    throw resource_error("enumerate_shifts: 2^" + std::to_string(level_sum(j)) +
                         " shifts exceed the enumeration budget");
  }
  const int d = domain.dimension;
  std::vector<Index> out;
  out.reserve(shift_count(j));
  Index idx{j, std::vector<std::int64_t>(d, 0)};
  // odometer over the mixed-radix shift grid, lexicographic in k
  while (true) {
    out.push_back(idx);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++idx.shift[i] < (std::int64_t{1} << j[i])) break;
      idx.shift[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace hybridseq
