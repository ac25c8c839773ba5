#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace typika {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in KB or query text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// No domain element is consistent with the knowledge base.
class InconsistentKb : public Error {
 public:
  using Error::Error;
};

/// A model search needed ranks (or states) beyond the configured bound.
class SearchOverflow : public Error {
 public:
  SearchOverflow(unsigned bound, const std::string& what)
      : Error(what + " (rank bound " + std::to_string(bound) + " exceeded)"), bound_(bound) {}

  unsigned bound() const noexcept { return bound_; }

 private:
  unsigned bound_;
};

/// Two models were compared that do not share domain and interpretation.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace typika
