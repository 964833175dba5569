#pragma once

#include <stdexcept>
#include <string>

namespace gtag {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text or file content could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition or invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A lexeme or phrase has no forms for the requested language.
class MissingLanguageError : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure inside one stage of an experiment run.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace gtag
