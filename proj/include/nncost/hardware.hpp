#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nncost {

enum class DataType { fp64, fp32, fp16, bf16, int8, int1 };

std::string_view to_string(DataType t);
std::optional<DataType> parse_data_type(std::string_view s);

/// A processor described by its per-core, per-cycle throughput and/or its
/// energy efficiency.
///
/// Peak performance needs `flops_per_cycle[dtype]`, `clock_hz` and `cores`;
/// energy estimates need `efficiency_flops_per_watt` (FLOPS/W, i.e. FLOPs per
/// joule) or, failing that, `tdp_watts` to derive one from the peak.
struct HardwareProfile {
  std::string id;
  std::string vendor;
  std::string architecture;
  std::map<DataType, double> flops_per_cycle;
  std::optional<double> clock_hz;
  std::optional<std::uint64_t> cores;
  std::optional<double> efficiency_flops_per_watt;
  std::optional<double> tdp_watts;
  std::string notes;

  friend bool operator==(const HardwareProfile&, const HardwareProfile&) = default;
};

/// Throws ValidationError when a numeric field is not finite and positive, or
/// when neither the peak triple nor an efficiency is present.
void validate(const HardwareProfile& profile);

/// FLOPs/cycle x cycles/second x cores.
/// Throws MissingCapability when the dtype, clock or core count is missing.
double peak_flops(const HardwareProfile& profile, DataType dtype);

/// Energy efficiency in FLOPS/W: the explicit value if present, otherwise
/// peak_flops(dtype) / tdp_watts. Throws MissingCapability if neither works.
double efficiency_flops_per_watt(const HardwareProfile& profile, DataType dtype);

/// Per-invocation overrides for the representative clock/core defaults.
struct ProfileOverrides {
  std::optional<double> clock_hz;
  std::optional<std::uint64_t> cores;
  std::optional<double> efficiency_flops_per_watt;

  bool empty() const noexcept { return !clock_hz && !cores && !efficiency_flops_per_watt; }
};

HardwareProfile apply_overrides(HardwareProfile profile, const ProfileOverrides& overrides);

/// Immutable collection of profiles keyed by id.
class ProfileDatabase {
 public:
  ProfileDatabase() = default;
  explicit ProfileDatabase(std::vector<HardwareProfile> profiles);

  const std::vector<HardwareProfile>& profiles() const noexcept { return profiles_; }
  const HardwareProfile* find(std::string_view id) const noexcept;
  /// Throws NotFound naming the id.
  const HardwareProfile& get(std::string_view id) const;

 private:
  std::vector<HardwareProfile> profiles_;
};

/// Profiles bundled with the tool (data/hardware.hwspec), parsed once.
const ProfileDatabase& builtin_database();

std::vector<HardwareProfile> builtin_profiles();

}  // namespace nncost
