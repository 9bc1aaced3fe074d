// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_ERRORS_HPP_
#define EXPACT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace expact {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or configuration.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// A numerical construction failed (bad poles, rank deficiency, ...).
class ConstructionError : public Error {
 public:
  explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

/// Arnoldi breakdown: a candidate basis column vanished after
/// orthogonalization. Carries the offending column index.
class BreakdownError : public Error {
 public:
  BreakdownError(const std::string& msg, int column)
      : Error(msg), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// Factorization failure (singular pivot, structural singularity).
class FactorizationError : public Error {
 public:
  explicit FactorizationError(const std::string& msg) : Error(msg) {}
};

/// A projected shifted system was singular or near-singular.
class ShiftFailureError : public Error {
 public:
  explicit ShiftFailureError(const std::string& msg) : Error(msg) {}
};

/// Object used in a state it does not support (e.g. missing generators).
class StateError : public Error {
 public:
  explicit StateError(const std::string& msg) : Error(msg) {}
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line = -1)
      : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace expact

#endif  // EXPACT_ERRORS_HPP_
