#pragma once

// Theoretical energy and carbon footprint from a FLOP count and a device
// efficiency in FLOPS/W (= FLOPs per joule). All energies are joules unless the
// name says otherwise.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nncost {

inline constexpr double kJoulesPerKwh = 3.6e6;
inline constexpr double kDefaultBackwardMultiplier = 2.0;
/// Grams CO2eq per kWh used when the caller gives no intensity (US West Coast estimate).
inline constexpr double kDefaultCarbonIntensity = 250.0;
/// Mobile devices expected by the end of 2025; marked on prediction curves.
inline constexpr std::uint64_t kMobileUsers2025 = 7'400'000'000ULL;

struct TrainingConfig {
  std::uint64_t training_samples = 1;
  std::uint64_t epochs = 1;
  /// Backward-pass cost relative to the forward pass.
  double backward_multiplier = kDefaultBackwardMultiplier;

  friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

/// Throws DomainError for zero samples/epochs or a negative/non-finite multiplier.
void validate(const TrainingConfig& cfg);

struct EnergyReport {
  double e_forward_j = 0.0;
  double e_backward_j = 0.0;
  double e_training_j = 0.0;
  double e_per_prediction_j = 0.0;
};

struct CarbonIntensity {
  double grams_co2eq_per_kwh = kDefaultCarbonIntensity;
  std::string region_label = "us-west";

  friend bool operator==(const CarbonIntensity&, const CarbonIntensity&) = default;
};

void validate(const CarbonIntensity& intensity);

struct CurvePoint {
  std::uint64_t predictions = 0;
  double grams = 0.0;
  /// Non-empty for highlighted points (the 2025 mobile-user count).
  std::string marker;
};

struct CarbonReport {
  double training_g = 0.0;
  double per_prediction_g = 0.0;
  std::optional<std::vector<CurvePoint>> curve;
};

/// (m_flops / efficiency) * samples * epochs
double energy_forward(std::uint64_t m_flops, double efficiency_flops_per_watt,
                      const TrainingConfig& cfg);

EnergyReport energy_training(std::uint64_t m_flops, double efficiency_flops_per_watt,
                             const TrainingConfig& cfg);

/// (m_flops / efficiency) * input_count
double energy_prediction(std::uint64_t m_flops, double efficiency_flops_per_watt,
                         std::uint64_t input_count);

/// Joules -> kWh -> grams CO2eq.
double carbon_footprint(double energy_j, const CarbonIntensity& intensity);

/// Counts 1, 10, 100, ... (and intermediate log steps) from `first` up to and
/// including `last`. `last` is always the final point; 7.4e9 is inserted when
/// the range covers it.
std::vector<std::uint64_t> log_spaced_counts(std::uint64_t first, std::uint64_t last,
                                             unsigned steps_per_decade = 1);

struct CurveOptions {
  /// Adds the one-time training footprint as a constant offset.
  bool include_training = false;
  double training_g = 0.0;
};

/// Cumulative CO2 for each prediction count. Counts must be positive and
/// strictly increasing (DomainError otherwise).
CarbonReport co2_vs_predictions(std::uint64_t m_flops, double efficiency_flops_per_watt,
                                const CarbonIntensity& intensity,
                                std::span<const std::uint64_t> prediction_counts,
                                const CurveOptions& options = {});

}  // namespace nncost
