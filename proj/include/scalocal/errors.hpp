#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalocal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Rank q outside the supported domain (q < 0, q == 1, or non-finite).
class UnsupportedRank : public Error {
 public:
  explicit UnsupportedRank(double q);
  double rank() const noexcept { return rank_; }

 private:
  double rank_;
};

/// Two curves that cannot be combined (different rank or scale grid).
class IncompatibleCurves : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Throws UnsupportedRank unless q is finite, q >= 0 and q != 1.
void validate_rank(double q);

}  // namespace scalocal
