#ifndef THEMIS_ERRORS_HPP
#define THEMIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace themis {

// Raised for invalid scenarios, configs, and policy/scenario mismatches.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a simulation-level contract is violated (dequeue from an
// empty queue, capacity breach, negative credit). CLI exit code 3.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when integer arithmetic would leave the 64-bit range.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace themis

#endif
