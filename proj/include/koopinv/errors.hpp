#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace koopinv {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotPrimeError : public Error {
 public:
  explicit NotPrimeError(std::uint64_t p)
      : Error("not a prime modulus: " + std::to_string(p)), p_(p) {}
  std::uint64_t value() const { return p_; }

 private:
  std::uint64_t p_;
};

class FieldMismatchError : public Error {
 public:
  FieldMismatchError(std::uint64_t p1, std::uint64_t p2)
      : Error("field mismatch: F_" + std::to_string(p1) + " vs F_" + std::to_string(p2)) {}
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("division by zero") {}
};

class ArityMismatchError : public Error {
 public:
  ArityMismatchError(std::size_t expected, std::size_t got)
      : Error("arity mismatch: expected " + std::to_string(expected) + " variables, got " +
              std::to_string(got)) {}
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class NotSquareError : public Error {
 public:
  NotSquareError(std::size_t rows, std::size_t cols)
      : Error("matrix is not square: " + std::to_string(rows) + "x" + std::to_string(cols)) {}
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError() : Error("matrix is singular") {}
};

class NotPermutationError : public Error {
 public:
  NotPermutationError() : Error("not a permutation (det M = 0)") {}
};

class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what) : Error("size limit exceeded: " + what) {}
};

class UndefinedAtError : public Error {
 public:
  explicit UndefinedAtError(std::uint64_t at)
      : Error("undefined at parameter value " + std::to_string(at)), at_(at) {}
  std::uint64_t at() const { return at_; }

 private:
  std::uint64_t at_;
};

class ZeroPolynomialError : public Error {
 public:
  ZeroPolynomialError() : Error("zero polynomial has no factorization") {}
};

class GenericallySingularError : public Error {
 public:
  GenericallySingularError() : Error("map is singular as a generic (symbolic) map") {}
};

class NotBijectiveError : public Error {
 public:
  NotBijectiveError() : Error("map is not a bijection") {}
};

/// Parse failure; carries the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& expected)
      : Error("syntax error at position " + std::to_string(pos) + ": expected " + expected),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class UnknownVariableError : public Error {
 public:
  UnknownVariableError(std::size_t pos, const std::string& name)
      : Error("unknown variable '" + name + "' at position " + std::to_string(pos)) {}
};

class NegativeExponentError : public Error {
 public:
  explicit NegativeExponentError(std::size_t pos)
      : Error("negative exponent at position " + std::to_string(pos)) {}
};

}  // namespace koopinv
