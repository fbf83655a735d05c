#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minflow {

enum class ErrorKind {
  MalformedTable,
  NotAssociative,
  NoIdentity,
  NotInvertible,
  SizeCapExceeded,
  NotASubgroup,
  NotNormal,
  NotASection,
  NotAHomomorphism,
  NotAnAutomorphism,
  GroupMismatch,
  IdentityActsNontrivially,
  ActionLawViolated,
  BasePointOrbitNotFull,
  IllDefinedQuotientAction,
  ValueOutsideSubgroup,
  CocycleIdentityFailed,
  NotEquivariant,
  NotBijective,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::IdentityActsNontrivially: return "IdentityActsNontrivially";
    case ErrorKind::ActionLawViolated: return "ActionLawViolated";
    case ErrorKind::BasePointOrbitNotFull: return "BasePointOrbitNotFull";
    case ErrorKind::IllDefinedQuotientAction: return "IllDefinedQuotientAction";
    case ErrorKind::ValueOutsideSubgroup: return "ValueOutsideSubgroup";
    case ErrorKind::CocycleIdentityFailed: return "CocycleIdentityFailed";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every validation failure in the library. The message names the first
/// failing witness (element, triple, point) so callers can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace minflow
