#pragma once

// Per-layer FLOP, MAC and weight accounting plus network aggregation.
//
// Counting convention (the only one supported):
//   dense   F = 2*I*O (+O with bias)                         one MAC = 2 FLOPs
//   conv    F_pf = out_r*out_c*(C*K_r*K_c + 1)               per filter
//           F = F_pf*N_f, or (F_pf + C*K_r*K_c + 1)*N_f with relu/leaky_relu
//   pool    F = out_r*out_c*(C*K_r*K_c + 1)
//   flatten F = 0
// Conv and pool count one unit per window element, dense counts two; the "+1"
// terms are kept for conv regardless of use_bias and for pooling as well.

#include <cstdint>
#include <string>
#include <vector>

#include "nncost/arch.hpp"

namespace nncost {

struct LayerCost {
  std::uint64_t flops = 0;
  std::uint64_t macs = 0;
  std::uint64_t weights = 0;
  TensorShape output_shape;
  std::vector<std::string> warnings;

  friend bool operator==(const LayerCost&, const LayerCost&) = default;
};

struct NetworkCost {
  std::vector<LayerCost> per_layer;
  std::uint64_t total_flops = 0;
  std::uint64_t total_macs = 0;
  std::uint64_t total_weights = 0;

  /// total_flops / 1e6
  double mflops() const noexcept { return static_cast<double>(total_flops) / 1e6; }

  friend bool operator==(const NetworkCost&, const NetworkCost&) = default;
};

std::uint64_t dense_flops(std::uint64_t input_size, std::uint64_t output_size, bool use_bias);

std::uint64_t conv_flops_per_filter(const TensorShape& input, const Conv2D& layer);

/// Applies the activation surcharge for relu and leaky_relu.
std::uint64_t conv_flops(const TensorShape& input, const Conv2D& layer);

std::uint64_t pool_flops(const TensorShape& input, const Pool2D& layer);

std::uint64_t count_weights(const TensorShape& input, const LayerSpec& layer);

LayerCost layer_cost(const TensorShape& input, const LayerSpec& layer);

/// Throws ShapeError carrying the index of the offending layer.
NetworkCost network_cost(const NetworkSpec& spec);

}  // namespace nncost
