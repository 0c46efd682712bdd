#pragma once

#include <stdexcept>
#include <string>

namespace revsynth {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// f2linalg
struct SingularMatrixError : Error {
  using Error::Error;
};

// permutation
struct NotABijectionError : Error {
  using Error::Error;
};
struct LengthMismatchError : Error {
  using Error::Error;
};
struct WidthMismatchError : Error {
  using Error::Error;
};
struct TooWideError : Error {
  using Error::Error;
};

// circuit text / truth-table text
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};
struct WireOutOfRangeError : Error {
  using Error::Error;
};

// synth
struct EqualValuesError : Error {
  using Error::Error;
};
struct PatternOverlapError : Error {
  using Error::Error;
};
struct DuplicateValuesError : Error {
  using Error::Error;
};
struct ZeroValueError : Error {
  using Error::Error;
};

}  // namespace revsynth
