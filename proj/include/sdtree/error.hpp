#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdtree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree: non-full node, shared child, cycle, dangling index.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument inside the domain but beyond what we are willing to enumerate.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Inconsistent MinD specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Bad input values for summation (NaN, infinities, missing labels).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdtree
