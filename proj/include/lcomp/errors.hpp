#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include <stdexcept>
#include <string>

namespace lcomp {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A record or token list violates a value constraint (non-finite, > 0, bad length).
class InvalidRecord : public Error {
 public:
  using Error::Error;
};

/// A record line could not be parsed; the message carries `path:line`.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Two records share the (dataset, sample, model, variant) key.
class DuplicateRecord : public Error {
 public:
  using Error::Error;
};

/// Records of one sample disagree on candidate count or gold index.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Distributions that must line up do not (length mismatch, missing records).
class JoinError : public Error {
 public:
  using Error::Error;
};

/// A composition spec or run configuration is malformed.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Reports cover different datasets or sample sets.
class ComparabilityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcomp
