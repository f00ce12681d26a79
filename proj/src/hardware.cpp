#include "nncost/hardware.hpp"

#include <cmath>
#include <set>

#include "embedded_data.hpp"
#include "nncost/error.hpp"
#include "nncost/spec_io.hpp"

namespace nncost {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(const std::optional<double>& v, const std::string& what) {
  if (v && !positive_finite(*v)) throw ValidationError(what + " must be a finite number > 0");
}

}  // namespace

std::string_view to_string(DataType t) {
  switch (t) {
    case DataType::fp64: return "fp64";
    case DataType::fp32: return "fp32";
    case DataType::fp16: return "fp16";
    case DataType::bf16: return "bf16";
    case DataType::int8: return "int8";
    case DataType::int1: return "int1";
  }
  return "fp32";
}

std::optional<DataType> parse_data_type(std::string_view s) {
  for (auto t : {DataType::fp64, DataType::fp32, DataType::fp16, DataType::bf16, DataType::int8,
                 DataType::int1}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

void validate(const HardwareProfile& p) {
  const std::string at = "profile '" + p.id + "': ";
  if (p.id.empty()) throw ValidationError("profile id must not be empty");
  for (const auto& [dtype, value] : p.flops_per_cycle) {
    if (!positive_finite(value)) {
      throw ValidationError(at + "flops_per_cycle." + std::string(to_string(dtype)) +
                            " must be a finite number > 0");
    }
  }
  require_positive(p.clock_hz, at + "clock_hz");
  require_positive(p.efficiency_flops_per_watt, at + "efficiency_flops_per_watt");
  require_positive(p.tdp_watts, at + "tdp_watts");
  if (p.cores && *p.cores == 0) throw ValidationError(at + "cores must be >= 1");

  const bool has_peak = !p.flops_per_cycle.empty() && p.clock_hz && p.cores;
  if (!has_peak && !p.efficiency_flops_per_watt) {
    throw ValidationError(at +
                          "needs flops_per_cycle + clock_hz + cores, or efficiency_flops_per_watt");
  }
}

double peak_flops(const HardwareProfile& p, DataType dtype) {
  const auto it = p.flops_per_cycle.find(dtype);
  if (it == p.flops_per_cycle.end()) {
    throw MissingCapability("profile '" + p.id + "' has no flops_per_cycle for " +
                            std::string(to_string(dtype)));
  }
  if (!p.clock_hz) throw MissingCapability("profile '" + p.id + "' has no clock_hz");
  if (!p.cores) throw MissingCapability("profile '" + p.id + "' has no cores");
  return it->second * *p.clock_hz * static_cast<double>(*p.cores);
}

double efficiency_flops_per_watt(const HardwareProfile& p, DataType dtype) {
  if (p.efficiency_flops_per_watt) return *p.efficiency_flops_per_watt;
  if (!p.tdp_watts) {
    throw MissingCapability("profile '" + p.id +
                            "' has neither efficiency_flops_per_watt nor tdp_watts");
  }
  return peak_flops(p, dtype) / *p.tdp_watts;
}

HardwareProfile apply_overrides(HardwareProfile profile, const ProfileOverrides& o) {
  if (o.clock_hz) profile.clock_hz = o.clock_hz;
  if (o.cores) profile.cores = o.cores;
  if (o.efficiency_flops_per_watt) profile.efficiency_flops_per_watt = o.efficiency_flops_per_watt;
  validate(profile);
  return profile;
}

ProfileDatabase::ProfileDatabase(std::vector<HardwareProfile> profiles)
    : profiles_(std::move(profiles)) {
  std::set<std::string> seen;
  for (const auto& p : profiles_) {
    validate(p);
    if (!seen.insert(p.id).second) throw ValidationError("duplicate profile id '" + p.id + "'");
  }
}

const HardwareProfile* ProfileDatabase::find(std::string_view id) const noexcept {
  for (const auto& p : profiles_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const HardwareProfile& ProfileDatabase::get(std::string_view id) const {
  if (const auto* p = find(id)) return *p;
  throw NotFound("unknown hardware id '" + std::string(id) + "'");
}

const ProfileDatabase& builtin_database() {
  static const ProfileDatabase db(parse_profiles(embedded::hardware_hwspec()).profiles);
  return db;
}

std::vector<HardwareProfile> builtin_profiles() { return builtin_database().profiles(); }

}  // namespace nncost
