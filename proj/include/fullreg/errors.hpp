#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fullreg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (bad argument, inapplicable method).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed family string or graph/hypergraph file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An oracle input exceeds its configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t size, std::size_t cap)
      : Error(what + ": size " + std::to_string(size) + " exceeds cap " +
              std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

// A mathematical invariant that must hold failed at runtime.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// The requested value is undefined (zero denominator, excluded identity case).
class UndefinedValue : public Error {
 public:
  using Error::Error;
};

}  // namespace fullreg
