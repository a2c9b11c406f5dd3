#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace axiom_align {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked about an entity the ontology does not declare.
class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& iri)
      : Error("unknown entity: " + iri), iri_(iri) {}
  const std::string& iri() const noexcept { return iri_; }

 private:
  std::string iri_;
};

/// A value violates an invariant of the ontology model.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed line in a line-oriented input (alignment TSV, lexicon file).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace axiom_align
