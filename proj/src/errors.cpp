#include "pfs/errors.hpp"

namespace pfs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::DenominatorNotInvertible: return "DenominatorNotInvertible";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::IncompatibleModulus: return "IncompatibleModulus";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundVariableCollision: return "UnboundVariableCollision";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::NotConjugationStable: return "NotConjugationStable";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::PointOffStratum: return "PointOffStratum";
    case ErrorKind::InadmissiblePrime: return "InadmissiblePrime";
    case ErrorKind::PartitionViolation: return "PartitionViolation";
    case ErrorKind::UnequalDegrees: return "UnequalDegrees";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotCommonStratification: return "NotCommonStratification";
    case ErrorKind::WitnessInvalid: return "WitnessInvalid";
    case ErrorKind::EmbeddingInvalid: return "EmbeddingInvalid";
    case ErrorKind::SurjectionInvalid: return "SurjectionInvalid";
    case ErrorKind::MissingDatum: return "MissingDatum";
    case ErrorKind::SemanticMismatch: return "SemanticMismatch";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::MissingCount: return "MissingCount";
    case ErrorKind::MissingQuotient: return "MissingQuotient";
    case ErrorKind::MissingData: return "MissingData";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::string> details)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      details_(std::move(details)) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace pfs
