#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistroot {

/// Structured failure categories. The CLI prints `name(kind)` and maps every
/// kind to exit status 2.
enum class ErrorKind {
  zeroInput,
  notPrime,
  notOdd,
  primeTooSmall,
  notPowerfree,
  singularCurve,
  wrongFamily,
  nonMinimal,
  unfactoredCofactor,
  insufficientLocalData,
  malformedTable,
  incompleteTable,
  duplicateTableEntry,
  scanBoundTooSmall,
  invalidArgument,
};

constexpr std::string_view name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::zeroInput: return "zero-input";
    case ErrorKind::notPrime: return "not-prime";
    case ErrorKind::notOdd: return "not-odd-positive";
    case ErrorKind::primeTooSmall: return "prime-too-small";
    case ErrorKind::notPowerfree: return "not-powerfree";
    case ErrorKind::singularCurve: return "singular-curve";
    case ErrorKind::wrongFamily: return "wrong-family";
    case ErrorKind::nonMinimal: return "non-minimal";
    case ErrorKind::unfactoredCofactor: return "unfactored-cofactor";
    case ErrorKind::insufficientLocalData: return "insufficient-local-data";
    case ErrorKind::malformedTable: return "malformed-table";
    case ErrorKind::incompleteTable: return "incomplete-table";
    case ErrorKind::duplicateTableEntry: return "duplicate-table-entry";
    case ErrorKind::scanBoundTooSmall: return "scan-bound-too-small";
    case ErrorKind::invalidArgument: return "invalid-argument";
  }
  return "unknown";
}

class DomainError : public std::domain_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twistroot
