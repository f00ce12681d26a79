#pragma once

// Analysis requests and reports shared by the CLI, the HTTP service and the
// Python module. Every payload goes through the same render functions, so
// identical inputs give byte-identical output on every path.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nncost/cost.hpp"
#include "nncost/energy.hpp"
#include "nncost/hardware.hpp"
#include "nncost/spec_io.hpp"

namespace nncost {

inline constexpr std::string_view kToolName = "nncost";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Rounds to 6 significant digits; the fixed precision of every reported float.
double round_sig6(double v);

/// Shared request parameters (everything except the network).
struct AnalysisParams {
  HardwareProfile profile;  // resolved, overrides applied
  DataType dtype = DataType::fp32;
  TrainingConfig training;
  CarbonIntensity intensity;
};

struct AnalysisRequest {
  SpecDocument network;
  AnalysisParams params;
  std::optional<std::vector<std::uint64_t>> prediction_counts;
  bool curve_includes_training = false;
  /// Lenient-parse diagnostics carried into the report.
  std::vector<std::string> input_warnings;
};

struct AnalysisReport {
  AnalysisRequest inputs;
  NetworkCost network_cost;
  std::optional<double> peak_flops;  // absent when the profile lacks clock/cores/dtype
  double efficiency_flops_per_watt = 0.0;
  EnergyReport energy;
  CarbonReport carbon;
  std::vector<std::string> warnings;
};

AnalysisReport analyze(const AnalysisRequest& request);

struct CompareRow {
  std::string name;
  std::uint64_t weights = 0;
  std::uint64_t total_flops = 0;
  double e_training_j = 0.0;
  double training_g = 0.0;
  /// Set when this network failed; the numeric fields are then meaningless.
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
};

enum class CompareColumn { name, weights, flops, energy, co2 };

std::optional<CompareColumn> parse_compare_column(std::string_view s);
std::string_view to_string(CompareColumn c);

struct CompareRequest {
  std::vector<SpecDocument> networks;
  /// Networks that failed to parse/resolve, reported as error rows.
  std::vector<CompareRow> failed_inputs;
  AnalysisParams params;
  CompareColumn sort_by = CompareColumn::flops;
  bool descending = false;
  bool fail_fast = false;
};

struct CompareReport {
  AnalysisParams params;
  CompareColumn sort_by = CompareColumn::flops;
  bool descending = false;
  std::vector<CompareRow> rows;
};

/// Needs >= 2 networks (DomainError). Per-network failures become error rows
/// unless fail_fast is set, in which case the first one is rethrown.
CompareReport compare(const CompareRequest& request);

struct CurveRequest {
  SpecDocument network;
  AnalysisParams params;
  std::vector<std::uint64_t> counts;
  bool include_training = false;
};

struct CurveReport {
  CurveRequest inputs;
  std::uint64_t total_flops = 0;
  double efficiency_flops_per_watt = 0.0;
  CarbonReport carbon;
};

CurveReport curve(const CurveRequest& request);

// ---- request decoding (JSON bodies, `--request` files) ----

struct RequestContext {
  const ProfileDatabase* database = nullptr;  // builtin_database() when null
  /// Whether "file:<path>" network references may be resolved (CLI only).
  bool allow_files = false;
  std::string base_dir;
};

AnalysisRequest decode_analysis_request(std::string_view json_text, const RequestContext& ctx = {});
CompareRequest decode_compare_request(std::string_view json_text, const RequestContext& ctx = {});
CurveRequest decode_curve_request(std::string_view json_text, const RequestContext& ctx = {});

// ---- JSON views ----

nlohmann::json to_json(const SpecDocument& doc);
nlohmann::json to_json(const HardwareProfile& profile);
nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const CompareReport& report);
nlohmann::json to_json(const CurveReport& report);
nlohmann::json error_json(const Error& e);

/// Pretty-printed JSON with a trailing newline.
std::string render_json(const nlohmann::json& j);

// ---- text views ----

std::string render_table(const AnalysisReport& report);
std::string render_csv(const AnalysisReport& report);  // per-layer rows
std::string render_table(const CompareReport& report);
std::string render_csv(const CompareReport& report);
std::string render_table(const CurveReport& report);
std::string render_csv(const CurveReport& report);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

}  // namespace nncost
