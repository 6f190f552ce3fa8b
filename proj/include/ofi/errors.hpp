#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ofi {

// Base for every error raised by the library. Callers that only want to
// report a message can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric was asked about a group with no members.
class EmptyGroupError : public Error {
 public:
  explicit EmptyGroupError(std::string which)
      : Error(which.empty() ? "empty group: n must be >= 1"
                            : "empty group (" + which + "): n must be >= 1"),
        which_(std::move(which)) {}

  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid thresholds, bands or option combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::string column)
      : Error("missing column '" + column + "' in header"), column_(std::move(column)) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

// Row numbers are 1-based and count data rows only (the header is row 0).
class RowError : public Error {
 public:
  RowError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("dataset has no records") {}
};

class InsufficientGroupsError : public Error {
 public:
  explicit InsufficientGroupsError(std::size_t found)
      : Error("at least 2 groups are required, found " + std::to_string(found)),
        found_(found) {}

  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t found_;
};

}  // namespace ofi
