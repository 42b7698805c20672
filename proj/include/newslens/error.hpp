#pragma once

#include <stdexcept>
#include <string>

namespace newslens {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: corpus lines, dates, index files.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument violates a precondition (empty query, bad range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Lookup of an unknown document, phrase or corpus.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Index directory written by an incompatible format version.
class VersionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace newslens
