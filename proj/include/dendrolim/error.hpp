#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dendrolim {

enum class ErrorCode {
  // validation failures (CLI exit code 2)
  NotConnected,
  HasCycle,
  BadEdgeIndex,
  BadEdgeLength,
  TrivialTree,
  InvalidPoint,
  InvalidMeasure,
  InvalidComponent,
  InvalidMatrix,
  WeightsNotNormalized,
  BranchWithZeroMass,
  NotAtomic,
  EnumerationTooLarge,
  DiameterTooLarge,
  TooManyAtoms,
  NotSpanned,
  OrderMismatch,
  UnsupportedRegion,
  BadInput,
  // numerical failures (CLI exit code 3)
  NotATreeMetric,
  NegativeGromovProduct,
};

std::string_view to_string(ErrorCode code);

/// True for failures that come out of a computation rather than from
/// malformed input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// One violated invariant reported by a validate_* function.
struct Issue {
  ErrorCode code;
  std::string message;
};

using Issues = std::vector<Issue>;

/// Throws the first issue, if any.
void throw_if_any(const Issues& issues);

}  // namespace dendrolim
