#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace batchcot {

/// Caller supplied data that violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A corpus or data file failed validation; carries per-line diagnostics.
class ValidationError : public InvalidInput {
 public:
  ValidationError(const std::string& what, std::vector<std::string> diagnostics)
      : InvalidInput(what), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace batchcot
