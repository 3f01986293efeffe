#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tatekit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// A result would be indistinguishable from zero at the precision cap.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NoRootInField : public Error {
 public:
  using Error::Error;
};

// Interval refinement reached its depth limit without separating two norms.
class UndecidableAtDepth : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class IncompatibleContext : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class TowerObstruction : public Error {
 public:
  TowerObstruction(std::size_t depth, const std::string& why)
      : Error("no in-field root at tower depth " + std::to_string(depth) + ": " + why), depth_(depth) {}
  std::size_t depth() const { return depth_; }

 private:
  std::size_t depth_;
};

}  // namespace tatekit
