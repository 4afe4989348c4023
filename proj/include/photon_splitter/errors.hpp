#pragma once

#include <stdexcept>
#include <string>

namespace psplit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CutoffExceeded : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ModeIndexError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SpecCountMismatch : Error {
  using Error::Error;
};

struct GridTooNarrow : Error {
  using Error::Error;
};

struct NeverClicks : Error {
  using Error::Error;
};

struct TooFewPhases : Error {
  using Error::Error;
};

struct CutoffTooLarge : Error {
  using Error::Error;
};

// Config text that does not parse; carries the 1-based offending line.
struct ParseError : Error {
  int line;
  ParseError(const std::string& what, int line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// Config that parses but violates a bound; carries the offending key.
struct ValidationError : Error {
  std::string key;
  ValidationError(const std::string& key_name, const std::string& what)
      : Error("key '" + key_name + "': " + what), key(key_name) {}
};

// Experiment name no protocol claims; kept separate from plain validation so
// the dispatcher can emit its dedicated machine-readable code.
struct UnknownExperiment : ValidationError {
  explicit UnknownExperiment(const std::string& name)
      : ValidationError("experiment", "unknown experiment '" + name + "'") {}
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace psplit
