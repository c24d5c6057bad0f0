#pragma once

#include <stdexcept>
#include <string>

namespace hybridseq {

/// Invalid argument or violated precondition (bad parameters, dimension
/// mismatch, empty admissible interval, ...).
class parameter_error : public std::invalid_argument {
public:
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation would exceed a configured resource budget
/// (cell counts, enumeration sizes, DOF budgets).
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input files or CLI usage.
class usage_error : public std::runtime_error {
public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hybridseq
