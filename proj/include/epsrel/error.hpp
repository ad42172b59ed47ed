#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epsrel {

/// Machine-readable failure classes shared by all modules.  The CLI maps any
/// of these to exit code 1; usage problems map to exit code 2.
enum class ErrorCode {
  // fault tree structure
  CyclicTree,
  DanglingReference,
  DuplicateId,
  EmptyGate,
  XorArityBelowTwo,
  PriorityAndArityBelowTwo,
  TopIsNotGate,
  BadHouseState,
  BadCondition,
  UnreachableNode,
  TautologicalTree,
  // evaluation / quantification
  UnknownEvent,
  NonCoherentTree,
  MissingModel,
  TooManyEventsForExact,
  NegativeTime,
  BadProbability,
  NonFiniteResult,
  // scenario enumeration
  TooManyEvents,
  BadClassifier,
  InconsistentCounts,
  // sizing
  NonPositiveVoltage,
  DegenerateDenominator,
  NonPositiveEfficiency,
  NonPositiveInput,
  BadCounts,
  NonPositiveInterval,
  UnknownComponent,
  // simulation
  NonMonotoneAnchors,
  BadStep,
  NoConvergence,
  GridMismatch,
  // risk matrix
  OutOfRange,
  BadThresholds,
  // file formats
  SyntaxError,
  SchemaViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// One validation finding: the structural rule broken plus the offending
/// node/field, so callers can report every problem at once.
struct Violation {
  ErrorCode code;
  std::string detail;
};

/// Thrown by validate_tree(); carries the full list of violations.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? ErrorCode::SchemaViolation
                                 : violations.front().code,
              Render(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string Render(const std::vector<Violation>& violations);
  std::vector<Violation> violations_;
};

}  // namespace epsrel
