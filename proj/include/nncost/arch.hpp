#pragma once

// Architecture data model: a linear chain of layers applied to one input tensor,
// plus deterministic shape inference through that chain.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nncost {

struct TensorShape {
  std::uint64_t rows = 1;
  std::uint64_t cols = 1;
  std::uint64_t channels = 1;

  /// rows == cols == 1; the shape a Dense layer consumes without reshaping.
  bool is_flat() const noexcept { return rows == 1 && cols == 1; }
  /// rows * cols * channels, overflow-checked.
  std::uint64_t elements() const;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

std::string to_string(const TensorShape& shape);  // "100x100x3"

enum class Activation { none, relu, leaky_relu };

std::string_view to_string(Activation a);
std::optional<Activation> parse_activation(std::string_view s);

struct Dense {
  std::uint64_t output_size = 1;
  bool use_bias = true;
  Activation activation = Activation::none;

  friend bool operator==(const Dense&, const Dense&) = default;
};

struct Conv2D {
  std::uint64_t kernel_rows = 1;
  std::uint64_t kernel_cols = 1;
  std::uint64_t stride_rows = 1;
  std::uint64_t stride_cols = 1;
  std::uint64_t pad_rows = 0;
  std::uint64_t pad_cols = 0;
  std::uint64_t num_filters = 1;
  bool use_bias = true;
  Activation activation = Activation::none;

  friend bool operator==(const Conv2D&, const Conv2D&) = default;
};

// Pooling never pads.
struct Pool2D {
  std::uint64_t kernel_rows = 1;
  std::uint64_t kernel_cols = 1;
  std::uint64_t stride_rows = 1;
  std::uint64_t stride_cols = 1;

  friend bool operator==(const Pool2D&, const Pool2D&) = default;
};

struct Flatten {
  friend bool operator==(const Flatten&, const Flatten&) = default;
};

using LayerSpec = std::variant<Dense, Conv2D, Pool2D, Flatten>;

/// "dense", "conv2d", "pool2d" or "flatten"; the `type` tag used in spec files.
std::string_view layer_kind(const LayerSpec& layer);

struct NetworkSpec {
  std::string name;
  TensorShape input_shape;
  std::vector<LayerSpec> layers;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Checks the field-level invariants (dims/strides/filters >= 1, non-empty layer list).
/// Throws ValidationError naming the offending field, e.g. "layers[1].stride_rows".
void validate(const NetworkSpec& spec);

struct LayerShape {
  TensorShape output;
  /// Set when a window count had to be floored (non-divisible extent).
  std::vector<std::string> warnings;
};

/// Output shape of one layer. Throws ShapeError (without layer index) when the
/// kernel does not fit or a dimension would drop below 1.
LayerShape infer_layer_shape(const TensorShape& input, const LayerSpec& layer);

/// Per-layer shapes including floor warnings. ShapeError carries the layer index.
std::vector<LayerShape> infer_layer_shapes(const NetworkSpec& spec);

/// One output shape per layer, in layer order.
std::vector<TensorShape> infer_shapes(const NetworkSpec& spec);

}  // namespace nncost
