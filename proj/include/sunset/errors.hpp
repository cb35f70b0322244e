#pragma once

#include <stdexcept>
#include <string>

namespace sunset {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed bytes on disk or on the wire (carries location where known).
struct ParseError : Error {
  using Error::Error;
};

// Well-formed input that violates a documented invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Cross-record referential breakage (triplet pointing at a missing topic etc).
struct IntegrityError : Error {
  using Error::Error;
};

// Model output from which no structure could be recovered; keeps the raw text.
struct ExtractionError : Error {
  ExtractionError(const std::string& what, std::string raw_text)
      : Error(what), raw(std::move(raw_text)) {}
  std::string raw;
};

struct ConfigError : Error {
  using Error::Error;
};

// A pipeline stage was invoked before its predecessor produced its files.
struct MissingArtifactError : Error {
  using Error::Error;
};

// Transport / remote-service failure (retriable by callers).
struct ServiceError : Error {
  using Error::Error;
};

// A fixture-mode replay asked for a response that was never recorded.
// Always fatal: replay is only meaningful when it is exact.
struct FixtureMissingError : Error {
  using Error::Error;
};

}  // namespace sunset
