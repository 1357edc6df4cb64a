#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heats {

/// Machine-readable failure categories shared by the library, the HTTP
/// service and the CLI.
enum class ErrorCode {
  UnknownCity,
  UnknownDestination,
  UnknownLevels,
  NonPositiveDimension,
  ParseError,
  DuplicateDevice,
  InvariantViolation,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every heats failure. `field()` names the offending
/// input field (or table column / device attribute) when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

class UnknownCity : public Error {
 public:
  explicit UnknownCity(const std::string& name)
      : Error(ErrorCode::UnknownCity, "unknown city: '" + name + "'", "city") {}
};

class UnknownDestination : public Error {
 public:
  explicit UnknownDestination(const std::string& name)
      : Error(ErrorCode::UnknownDestination,
              "unknown destination: '" + name + "'", "destination") {}
};

class UnknownLevels : public Error {
 public:
  explicit UnknownLevels(long levels)
      : Error(ErrorCode::UnknownLevels,
              "no GN rows for levels=" + std::to_string(levels), "levels") {}
};

class NonPositiveDimension : public Error {
 public:
  NonPositiveDimension(std::string field, const std::string& message)
      : Error(ErrorCode::NonPositiveDimension, message, std::move(field)) {}
};

/// Malformed input file. `where()` is a human locator such as
/// "gn.csv:5" or "devices.json: record 3".
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& message, std::string field = {})
      : Error(ErrorCode::ParseError, where + ": " + message, std::move(field)),
        where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class DuplicateDevice : public Error {
 public:
  DuplicateDevice(const std::string& where, const std::string& producer,
                  const std::string& model)
      : Error(ErrorCode::DuplicateDevice,
              where + ": duplicate device '" + producer + " / " + model + "'",
              "model") {}
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& where, std::string field,
                     const std::string& message)
      : Error(ErrorCode::InvariantViolation,
              where + ": field '" + field + "': " + message, field) {}
};

}  // namespace heats
