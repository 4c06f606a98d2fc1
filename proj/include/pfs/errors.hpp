#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfs {

// Every failure the engine can report. The CLI prints the name verbatim in
// its error JSON, so renaming an enumerator is a wire-format change.
enum class ErrorKind {
  InvalidArgument,
  // exact algebra
  NonPrime,
  CapExceeded,
  MissingVariable,
  DenominatorNotInvertible,
  ZeroInput,
  IncompatibleModulus,
  NotSquarefree,
  // formulas
  SyntaxError,
  UnboundVariableCollision,
  BudgetExceeded,
  VariableMismatch,
  // groups and central functions
  InvalidGroup,
  NotAHomomorphism,
  NotInjective,
  NotSurjective,
  GroupMismatch,
  NotASubgroup,
  NotCyclic,
  NotConjugationStable,
  NotCentral,
  SingularSystem,
  ZeroNorm,
  // covers and stratifications
  PointOffStratum,
  InadmissiblePrime,
  PartitionViolation,
  UnequalDegrees,
  DimMismatch,
  NotCommonStratification,
  WitnessInvalid,
  EmbeddingInvalid,
  SurjectionInvalid,
  MissingDatum,
  SemanticMismatch,
  // motives and chi
  NegativeExponent,
  MissingCount,
  MissingQuotient,
  MissingData,
  // jets
  NoStabilization,
  // fixtures
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& message, std::vector<std::string> details);

  ErrorKind kind() const { return kind_; }
  const std::vector<std::string>& details() const { return details_; }

  // Byte offset into the parsed text, for SyntaxError.
  std::optional<std::size_t> position;

 private:
  ErrorKind kind_;
  std::vector<std::string> details_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace pfs
