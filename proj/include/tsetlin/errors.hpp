#pragma once

#include <stdexcept>
#include <string>

namespace tsetlin {

// Invalid hyperparameters or option values. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition (width mismatch, bad index).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed dataset or model input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tsetlin
