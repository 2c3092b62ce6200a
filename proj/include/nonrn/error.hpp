#pragma once

#include <stdexcept>
#include <string>

namespace nonrn {

// Base for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text or JSON that does not parse into the expected shape.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Linear system whose dimensions do not agree.
class MalformedSystem : public Error {
 public:
  using Error::Error;
};

// Duplicate points handed to a constructor that needs distinct ones.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Exact solver asked to handle more than its configured bound.
class SizeLimitExceeded : public Error {
 public:
  SizeLimitExceeded(std::size_t size, std::size_t limit)
      : Error("set of size " + std::to_string(size) +
              " exceeds exact-mode limit " + std::to_string(limit)),
        size_(size),
        limit_(limit) {}

  std::size_t size() const { return size_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

}  // namespace nonrn
