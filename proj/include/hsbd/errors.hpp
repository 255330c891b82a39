#ifndef HSBD_ERRORS_HPP
#define HSBD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hsbd {

// Base for domain-level failures (CLI exit code 2).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Band with empty support, or normalization of a zero row.
struct ZeroBandError : DomainError {
  using DomainError::DomainError;
};

// A sequence rule produced a non-integer or negative incidence coefficient.
struct RuleOverflowError : DomainError {
  using DomainError::DomainError;
};

// A spec cannot generate bands beyond its explicit data.
struct FiniteHorizonError : DomainError {
  using DomainError::DomainError;
};

// An odometer or path traverses a zero coefficient.
struct MissingEdgeError : DomainError {
  using DomainError::DomainError;
};

// Adjacent measure-vector kinds cannot be compared.
struct MixedKindsError : DomainError {
  using DomainError::DomainError;
};

// Windowed subdiagram lacks the equal-column-sum property.
struct NotEcsError : DomainError {
  long long level;
  long long column_a;
  long long column_b;
  NotEcsError(long long lvl, long long ca, long long cb, const std::string& msg)
      : DomainError(msg), level(lvl), column_a(ca), column_b(cb) {}
};

// Enumeration guard tripped (CLI exit code 3).
struct IntractableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spec-file syntax error with position (CLI exit code 1).
struct ParseError : std::runtime_error {
  long long line;
  long long column;
  ParseError(long long ln, long long col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(col) + ": " + msg),
        line(ln),
        column(col) {}
};

// Spec-file semantic error: a named invariant is violated (CLI exit code 2).
struct SemanticError : DomainError {
  using DomainError::DomainError;
};

}  // namespace hsbd

#endif
