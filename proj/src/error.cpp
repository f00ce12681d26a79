#include "nncost/error.hpp"

namespace nncost {

namespace {

std::string with_location(const std::string& msg, const std::optional<SourceLocation>& loc) {
  if (!loc) return msg;
  return to_string(*loc) + ": " + msg;
}

}  // namespace

std::string to_string(const SourceLocation& loc) {
  return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column);
}

std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "parse_error";
    case ErrorKind::schema: return "schema_error";
    case ErrorKind::validation: return "validation_error";
    case ErrorKind::shape: return "shape_error";
    case ErrorKind::capability: return "missing_capability";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::domain: return "domain_error";
    case ErrorKind::overflow: return "overflow_error";
  }
  return "error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax:
    case ErrorKind::schema:
    case ErrorKind::validation:
      return 2;
    case ErrorKind::shape:
      return 3;
    case ErrorKind::capability:
    case ErrorKind::not_found:
      return 4;
    case ErrorKind::domain:
    case ErrorKind::overflow:
      return 5;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<SourceLocation> location)
    : std::runtime_error(with_location(message, location)),
      kind_(kind),
      message_(message),
      location_(location) {}

ShapeError::ShapeError(const std::string& msg, std::optional<std::size_t> layer_index)
    : Error(ErrorKind::shape,
            layer_index ? "layer " + std::to_string(*layer_index) + ": " + msg : msg),
      layer_index_(layer_index) {}

}  // namespace nncost
