#pragma once

// Reading and writing `.nnspec` (network) and `.hwspec` (hardware profile)
// documents. Both are YAML 1.2 documents (JSON is accepted as a subset) with a
// strict, versioned schema; see docs/format.md.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nncost/arch.hpp"
#include "nncost/error.hpp"
#include "nncost/hardware.hpp"

namespace nncost {

inline constexpr std::string_view kFormatVersion = "1.0";

struct SpecMetadata {
  std::optional<std::string> author;
  std::optional<std::string> source;
  std::optional<std::string> citation;

  friend bool operator==(const SpecMetadata&, const SpecMetadata&) = default;
};

struct SpecDocument {
  std::string format_version{kFormatVersion};
  NetworkSpec network;
  SpecMetadata metadata;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

struct ProfileDocument {
  std::string format_version{kFormatVersion};
  std::vector<HardwareProfile> profiles;

  friend bool operator==(const ProfileDocument&, const ProfileDocument&) = default;
};

struct Diagnostic {
  SourceLocation location;
  std::string message;
};

struct ParseOptions {
  /// Unknown fields are errors when set, warnings otherwise.
  bool strict = true;
};

/// Parses and validates a network document.
/// Throws SyntaxError, SchemaError or ValidationError with a source location.
/// Lenient-mode warnings are appended to `warnings` when given.
SpecDocument parse_spec(std::string_view text, const ParseOptions& options = {},
                        std::vector<Diagnostic>* warnings = nullptr);

/// Deterministic: fixed field order, every field written explicitly.
std::string serialize_spec(const SpecDocument& doc);

ProfileDocument parse_profiles(std::string_view text, const ParseOptions& options = {},
                               std::vector<Diagnostic>* warnings = nullptr);

std::string serialize_profiles(const ProfileDocument& doc);

/// Reads a whole file; NotFound if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace nncost
