#pragma once

#include <stdexcept>
#include <string>

namespace wnr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotSquare : public Error {
public:
  NotSquare(long rows, long cols)
      : Error("matrix must be square, got " + std::to_string(rows) + "x" +
              std::to_string(cols)) {}
};

class NotHermitian : public Error {
public:
  explicit NotHermitian(double asymmetry)
      : Error("matrix is not Hermitian (relative asymmetry " +
              std::to_string(asymmetry) + ")") {}
};

class NotPSD : public Error {
public:
  explicit NotPSD(double min_eigenvalue)
      : Error("matrix is not positive semidefinite (min eigenvalue " +
              std::to_string(min_eigenvalue) + ")") {}
};

class NonFinite : public Error {
public:
  NonFinite() : Error("matrix contains NaN or Inf entries") {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagree beyond tolerance.
class RouteMismatch : public Error {
public:
  RouteMismatch(const std::string &what, double a, double b)
      : Error(what + ": routes disagree (" + std::to_string(a) + " vs " +
              std::to_string(b) + ")"),
        first(a), second(b) {}
  double first;
  double second;
};

class UnknownKind : public Error {
public:
  explicit UnknownKind(const std::string &kind)
      : Error("unknown ensemble kind '" + kind + "'") {}
};

class UnknownBound : public Error {
public:
  explicit UnknownBound(const std::string &id)
      : Error("unknown bound id '" + id + "'") {}
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace wnr
