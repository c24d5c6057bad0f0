#include "hybridseq/sequence.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace hybridseq {

void HybridSequence::set(const Index& idx, double v) {
  if (static_cast<int>(idx.level.size()) != domain_.dimension ||
      idx.shift.size() != idx.level.size()) {
    throw parameter_error("index dimension does not match the sequence domain");
  }
  if (!shift_in_range(idx)) {
    throw parameter_error("shift outside the dyadic translation range of its level");
  }
  if (v == 0.0) {
    entries_.erase(idx);
  } else {
    entries_[idx] = v;
  }
}

double HybridSequence::at(const Index& idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? 0.0 : it->second;
}

bool HybridSequence::contains(const Index& idx) const {
  return entries_.find(idx) != entries_.end();
}

void HybridSequence::scale(double t) {
  if (t == 0.0) {
    entries_.clear();
    return;
  }
  for (auto& [idx, v] : entries_) v *= t;
}

HybridSequence operator+(const HybridSequence& a, const HybridSequence& b) {
  if (a.dimension() != b.dimension()) {
    throw parameter_error("sequence dimensions differ");
  }
  HybridSequence out = a;
  for (const auto& [idx, v] : b.entries()) {
    out.set(idx, out.at(idx) + v);
  }
  return out;
}

HybridSequence operator-(const HybridSequence& a, const HybridSequence& b) {
  if (a.dimension() != b.dimension()) {
    throw parameter_error("sequence dimensions differ");
  }
  HybridSequence out = a;
  for (const auto& [idx, v] : b.entries()) {
    out.set(idx, out.at(idx) - v);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw usage_error("cannot parse floating-point value '" + s + "'");
  }
  return v;
}

void write_text(const HybridSequence& seq, std::ostream& os) {
  for (const auto& [idx, v] : seq.entries()) {
    for (std::size_t i = 0; i < idx.level.size(); ++i) {
      if (i) os << ' ';
      os << idx.level[i];
    }
    os << ' ';
    for (std::size_t i = 0; i < idx.shift.size(); ++i) {
      os << ' ' << idx.shift[i];
    }
    os << "  " << format_double(v) << '\n';
  }
}

HybridSequence read_text(std::istream& is, int dimension) {
  HybridSequence seq(DomainConfig{dimension});
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Index idx;
    idx.level.resize(dimension);
    idx.shift.resize(dimension);
    std::string value;
    for (int i = 0; i < dimension; ++i) ls >> idx.level[i];
    for (int i = 0; i < dimension; ++i) ls >> idx.shift[i];
    ls >> value;
    if (!ls) {
      throw usage_error("malformed sequence entry at line " + std::to_string(lineno));
    }
    seq.set(idx, seq.at(idx) + parse_double(value));
  }
  return seq;
}

nlohmann::json to_json(const HybridSequence& seq) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [idx, v] : seq.entries()) {
    entries.push_back({{"j", idx.level}, {"k", idx.shift}, {"v", v}});
  }
  return {{"d", seq.dimension()}, {"entries", std::move(entries)}};
}

HybridSequence sequence_from_json(const nlohmann::json& j) {
  if (!j.contains("d") || !j.contains("entries")) {
    throw usage_error("sequence JSON needs fields 'd' and 'entries'");
  }
  HybridSequence seq(DomainConfig{j.at("d").get<int>()});
  for (const auto& entry : j.at("entries")) {
    Index idx{entry.at("j").get<LevelVec>(),
              entry.at("k").get<std::vector<std::int64_t>>()};
    seq.set(idx, seq.at(idx) + entry.at("v").get<double>());
  }
  return seq;
}

}  // namespace hybridseq
