// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infgraph {

/// Base for every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraphError : public Error {
 public:
  using Error::Error;
};

class InvalidLabelError : public Error {
 public:
  using Error::Error;
};

/// A role required by an operation is absent from the graph.
class MissingNodeError : public Error {
 public:
  explicit MissingNodeError(std::string role)
      : Error("missing node: " + role), role_(std::move(role)) {}
  const std::string& role() const noexcept { return role_; }

 private:
  std::string role_;
};

class DanglingEdgeError : public Error {
 public:
  using Error::Error;
};

/// DOT syntax error with a byte offset into the input.
class DotSyntaxError : public Error {
 public:
  DotSyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownRoleError : public Error {
 public:
  using Error::Error;
};

class ConflictingLabelError : public Error {
 public:
  using Error::Error;
};

class InvalidPolarityError : public Error {
 public:
  InvalidPolarityError(std::size_t statement, const std::string& value)
      : Error("invalid polarity '" + value + "' in statement " + std::to_string(statement)),
        statement_(statement) {}
  std::size_t statement() const noexcept { return statement_; }

 private:
  std::size_t statement_;
};

/// repair_dot found no digraph block at all.
class UnrecoverableDotError : public Error {
 public:
  using Error::Error;
};

/// Input sequence does not have the four-marker template shape.
class MalformedSequenceError : public Error {
 public:
  MalformedSequenceError(std::string marker, const std::string& why)
      : Error("malformed sequence: " + why + " marker '" + marker + "'"), marker_(std::move(marker)) {}
  const std::string& marker() const noexcept { return marker_; }

 private:
  std::string marker_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of judgments for a query (majority needs exactly three).
class ArityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateTestError : public Error {
 public:
  using Error::Error;
};

class MissingMajorityError : public Error {
 public:
  using Error::Error;
};

class IdMismatchError : public Error {
 public:
  using Error::Error;
};

class InsufficientPoolError : public Error {
 public:
  using Error::Error;
};

class TooFewJudgesError : public Error {
 public:
  using Error::Error;
};

}  // namespace infgraph
