#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer arithmetic left the int64 range. Never silently wraps.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(const std::string& what_kind, const std::string& id)
      : Error("unknown " + what_kind + " id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// A construction was asked to run on an input outside its hypotheses.
// `stage` names the construction (or pipeline stage) that refused.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace gm
