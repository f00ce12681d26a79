#include "nncost/energy.hpp"

#include <algorithm>
#include <cmath>

#include "nncost/error.hpp"

namespace nncost {

namespace {

void require_efficiency(double efficiency) {
  if (!(std::isfinite(efficiency) && efficiency > 0.0)) {
    throw DomainError("efficiency_flops_per_watt must be a finite number > 0");
  }
}

// 10^k for k in [0, 19]; exact in uint64.
std::uint64_t pow10(unsigned k) {
  std::uint64_t v = 1;
  while (k-- > 0) v *= 10;
  return v;
}

}  // namespace

void validate(const TrainingConfig& cfg) {
  if (cfg.training_samples == 0) throw DomainError("training_samples must be >= 1");
  if (cfg.epochs == 0) throw DomainError("epochs must be >= 1");
  if (!(std::isfinite(cfg.backward_multiplier) && cfg.backward_multiplier >= 0.0)) {
    throw DomainError("backward_multiplier must be a finite number >= 0");
  }
}

void validate(const CarbonIntensity& intensity) {
  if (!(std::isfinite(intensity.grams_co2eq_per_kwh) && intensity.grams_co2eq_per_kwh > 0.0)) {
    throw DomainError("grams_co2eq_per_kwh must be a finite number > 0");
  }
}

double energy_forward(std::uint64_t m_flops, double efficiency, const TrainingConfig& cfg) {
  require_efficiency(efficiency);
  validate(cfg);
  const double per_sample = static_cast<double>(m_flops) / efficiency;
  return per_sample * static_cast<double>(cfg.training_samples) * static_cast<double>(cfg.epochs);
}

EnergyReport energy_training(std::uint64_t m_flops, double efficiency, const TrainingConfig& cfg) {
  EnergyReport r;
  r.e_forward_j = energy_forward(m_flops, efficiency, cfg);
  r.e_backward_j = cfg.backward_multiplier * r.e_forward_j;
  r.e_training_j = r.e_forward_j + r.e_backward_j;
  r.e_per_prediction_j = energy_prediction(m_flops, efficiency, 1);
  return r;
}

double energy_prediction(std::uint64_t m_flops, double efficiency, std::uint64_t input_count) {
  require_efficiency(efficiency);
  return static_cast<double>(m_flops) / efficiency * static_cast<double>(input_count);
}

double carbon_footprint(double energy_j, const CarbonIntensity& intensity) {
  if (!(std::isfinite(energy_j) && energy_j >= 0.0)) {
    throw DomainError("energy must be a finite number >= 0");
  }
  validate(intensity);
  return energy_j / kJoulesPerKwh * intensity.grams_co2eq_per_kwh;
}

std::vector<std::uint64_t> log_spaced_counts(std::uint64_t first, std::uint64_t last,
                                             unsigned steps_per_decade) {
  if (first == 0) throw DomainError("prediction range must start at >= 1");
  if (last < first) throw DomainError("prediction range is empty");
  if (steps_per_decade == 0) throw DomainError("steps_per_decade must be >= 1");

  std::vector<std::uint64_t> counts{first};
  // Grid points 10^(k/steps) rounded to integers, strictly between first and last.
  const double lo = std::log10(static_cast<double>(first));
  const double hi = std::log10(static_cast<double>(last));
  const auto start = static_cast<long long>(std::floor(lo * steps_per_decade)) + 1;
  for (long long k = start; static_cast<double>(k) / steps_per_decade < hi; ++k) {
    std::uint64_t v;
    if (k % steps_per_decade == 0) {
      v = pow10(static_cast<unsigned>(k / steps_per_decade));
    } else {
      v = static_cast<std::uint64_t>(
          std::llround(std::pow(10.0, static_cast<double>(k) / steps_per_decade)));
    }
    if (v > counts.back() && v < last) counts.push_back(v);
  }
  if (last > counts.back()) counts.push_back(last);

  if (first <= kMobileUsers2025 && kMobileUsers2025 <= last &&
      !std::binary_search(counts.begin(), counts.end(), kMobileUsers2025)) {
    counts.insert(std::upper_bound(counts.begin(), counts.end(), kMobileUsers2025),
                  kMobileUsers2025);
  }
  return counts;
}

CarbonReport co2_vs_predictions(std::uint64_t m_flops, double efficiency,
                                const CarbonIntensity& intensity,
                                std::span<const std::uint64_t> counts,
                                const CurveOptions& options) {
  if (counts.empty()) throw DomainError("prediction counts must not be empty");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) throw DomainError("prediction counts must be >= 1");
    if (i > 0 && counts[i] <= counts[i - 1]) {
      throw DomainError("prediction counts must be strictly increasing");
    }
  }

  CarbonReport report;
  report.training_g = options.training_g;
  report.per_prediction_g = carbon_footprint(energy_prediction(m_flops, efficiency, 1), intensity);
  const double offset = options.include_training ? options.training_g : 0.0;

  std::vector<CurvePoint> curve;
  curve.reserve(counts.size());
  for (auto n : counts) {
    CurvePoint pt;
    pt.predictions = n;
    pt.grams = carbon_footprint(energy_prediction(m_flops, efficiency, n), intensity) + offset;
    if (n == kMobileUsers2025) pt.marker = "mobile-users-2025";
    curve.push_back(std::move(pt));
  }
  report.curve = std::move(curve);
  return report;
}

}  // namespace nncost
