#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nncost {

/// 1-based position inside a spec or profile document.
struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

std::string to_string(const SourceLocation& loc);

enum class ErrorKind {
  syntax,      // malformed text
  schema,      // unknown kind/field, missing field, wrong scalar type
  validation,  // invariant breach (stride 0, ...)
  shape,       // shape inference failed
  capability,  // hardware profile lacks what was asked for
  not_found,   // unknown hardware/zoo id
  domain,      // numeric domain violation (zero efficiency, bad range)
  overflow,    // integer arithmetic exceeded 64 bits
};

/// Stable machine-readable code used by the HTTP service and the CLI.
std::string_view error_code(ErrorKind kind);

/// CLI process exit code for an error kind (2 parse, 3 shape, 4 capability, 5 domain).
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceLocation> location = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceLocation>& location() const noexcept { return location_; }
  /// Message without the location prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourceLocation> location_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::optional<SourceLocation> loc = std::nullopt)
      : Error(ErrorKind::syntax, msg, loc) {}
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& msg, std::optional<SourceLocation> loc = std::nullopt)
      : Error(ErrorKind::schema, msg, loc) {}
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, std::optional<SourceLocation> loc = std::nullopt)
      : Error(ErrorKind::validation, msg, loc) {}
};

/// Shape inference failure. `layer_index` is the 0-based index of the offending layer.
class ShapeError : public Error {
 public:
  ShapeError(const std::string& msg, std::optional<std::size_t> layer_index = std::nullopt);
  const std::optional<std::size_t>& layer_index() const noexcept { return layer_index_; }

 private:
  std::optional<std::size_t> layer_index_;
};

class MissingCapability : public Error {
 public:
  explicit MissingCapability(const std::string& msg) : Error(ErrorKind::capability, msg) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& msg, std::optional<SourceLocation> loc = std::nullopt)
      : Error(ErrorKind::not_found, msg, loc) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(ErrorKind::domain, msg) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& msg) : Error(ErrorKind::overflow, msg) {}
};

}  // namespace nncost
