// Exception hierarchy shared by the whole library.
//
// Everything thrown on purpose derives from dimerweb::Error so callers can
// catch one type at the boundary (the CLI maps Error -> exit code 2 for input
// problems and prints the message verbatim).
#pragma once

#include <stdexcept>
#include <string>

namespace dimerweb {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (network files, polynomial strings, web strings).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally well-formed input that violates a semantic requirement
// (non-bipartite edge, bad boundary degree, embedding inconsistencies, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A function was called with arguments outside its contract
// (unknown vertex id, move precondition violated, missing variable value, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

}  // namespace dimerweb
