#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "hybridseq/index.hpp"

#include "json.hpp"

namespace hybridseq {

/// Finitely supported coefficient map lambda = (j, k) -> a_lambda.
/// Absent indices are zero; stored zeros are normalized away.
class HybridSequence {
public:
  using Map = std::map<Index, double>;

  HybridSequence() = default;
  explicit HybridSequence(DomainConfig domain) : domain_(domain) {}

  const DomainConfig& domain() const { return domain_; }
  int dimension() const { return domain_.dimension; }

  /// Validates the shift bounds; v == 0 erases the entry.
  void set(const Index& idx, double v);
  double at(const Index& idx) const;  // 0 for absent indices
  bool contains(const Index& idx) const;

  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  void scale(double t);

  friend bool operator==(const HybridSequence&, const HybridSequence&) = default;

private:
  DomainConfig domain_{};
  Map entries_;
};

HybridSequence operator+(const HybridSequence& a, const HybridSequence& b);
HybridSequence operator-(const HybridSequence& a, const HybridSequence& b);

/// Line-oriented text format: `j_1 ... j_d  k_1 ... k_d  value`, one
/// entry per line. Doubles round-trip bit-exactly.
void write_text(const HybridSequence& seq, std::ostream& os);
HybridSequence read_text(std::istream& is, int dimension);

/// JSON variant: {"d": ..., "entries": [{"j": [...], "k": [...], "v": ...}]}.
nlohmann::json to_json(const HybridSequence& seq);
HybridSequence sequence_from_json(const nlohmann::json& j);

std::string format_double(double v);  // shortest round-trip decimal
double parse_double(const std::string& s);

}  // namespace hybridseq
