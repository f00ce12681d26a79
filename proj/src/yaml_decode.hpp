#pragma once

// Location-aware schema decoding on top of yaml-cpp. Internal to the library.

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nncost/energy.hpp"
#include "nncost/spec_io.hpp"

namespace nncost::detail {

SourceLocation location_of(const YAML::Node& node);

/// 1-based line/column of a byte offset into `text`.
SourceLocation offset_location(std::string_view text, std::size_t offset);

/// UTF-8 check, CRLF normalization and YAML parsing of a single document.
YAML::Node load_document(std::string_view text);

struct DecodeContext {
  ParseOptions options;
  std::vector<Diagnostic>* warnings = nullptr;
};

/// Walks one mapping, tracking which keys were consumed so that unknown keys
/// can be reported. Duplicate keys are rejected on construction.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string path, const DecodeContext& ctx);

  bool has(std::string_view key) const;
  YAML::Node required(std::string_view key);
  std::optional<YAML::Node> optional(std::string_view key);
  std::string path(std::string_view key) const;
  const YAML::Node& node() const noexcept { return node_; }

  /// Unknown keys: SchemaError in strict mode, otherwise a warning.
  void finish() const;

 private:
  YAML::Node node_;
  std::string path_;
  const DecodeContext& ctx_;
  std::map<std::string, std::pair<YAML::Node, YAML::Node>, std::less<>> entries_;
  std::set<std::string, std::less<>> consumed_;
};

std::uint64_t read_uint(const YAML::Node& n, const std::string& path);
/// Like read_uint but also accepts integral floating literals such as 7.4e9.
std::uint64_t read_count(const YAML::Node& n, const std::string& path);
double read_number(const YAML::Node& n, const std::string& path);
bool read_bool(const YAML::Node& n, const std::string& path);
std::string read_string(const YAML::Node& n, const std::string& path);

/// read_uint that also requires >= 1 (ValidationError otherwise).
std::uint64_t read_positive(const YAML::Node& n, const std::string& path);
/// read_number that also requires a finite value > 0.
double read_positive_number(const YAML::Node& n, const std::string& path);

SpecDocument decode_spec(const YAML::Node& root, const DecodeContext& ctx,
                         const std::string& path = "");
HardwareProfile decode_profile(const YAML::Node& node, const DecodeContext& ctx,
                               const std::string& path);
ProfileDocument decode_profiles(const YAML::Node& root, const DecodeContext& ctx);
TrainingConfig decode_training(const YAML::Node& node, const DecodeContext& ctx,
                               const std::string& path);
CarbonIntensity decode_intensity(const YAML::Node& node, const DecodeContext& ctx,
                                 const std::string& path);

}  // namespace nncost::detail
