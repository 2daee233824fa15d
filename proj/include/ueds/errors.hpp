#pragma once

#include <stdexcept>
#include <string>

namespace ueds {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NotStarForest : public Error {
 public:
  using Error::Error;
};

class CoverViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class InvalidDecomposition : public Error {
 public:
  using Error::Error;
};

class BagMismatch : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (decomposition width, oracle size) was exceeded.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public ResourceCapExceeded {
 public:
  using ResourceCapExceeded::ResourceCapExceeded;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace ueds
