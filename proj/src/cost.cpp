#include "nncost/cost.hpp"

#include "nncost/checked.hpp"
#include "nncost/error.hpp"

namespace nncost {

namespace {

// C*K_r*K_c + 1
std::uint64_t window_term(std::uint64_t channels, std::uint64_t kr, std::uint64_t kc) {
  return checked_add(checked_mul(checked_mul(channels, kr, "window"), kc, "window"), 1, "window");
}

std::uint64_t output_positions(const TensorShape& out) {
  return checked_mul(out.rows, out.cols, "output positions");
}

bool surcharged(Activation a) { return a == Activation::relu || a == Activation::leaky_relu; }

struct CostVisitor {
  const TensorShape& in;

  LayerCost operator()(const Dense& d) const {
    LayerCost c;
    const std::uint64_t inputs = in.elements();
    c.output_shape = {1, 1, d.output_size};
    c.flops = dense_flops(inputs, d.output_size, d.use_bias);
    c.macs = checked_mul(inputs, d.output_size, "dense macs");
    c.weights = count_weights(in, d);
    return c;
  }

  LayerCost operator()(const Conv2D& conv) const {
    LayerCost c;
    auto shape = infer_layer_shape(in, conv);
    c.output_shape = shape.output;
    c.warnings = std::move(shape.warnings);
    c.flops = conv_flops(in, conv);
    c.macs = checked_mul(conv_flops_per_filter(in, conv), conv.num_filters, "conv macs");
    c.weights = count_weights(in, conv);
    return c;
  }

  LayerCost operator()(const Pool2D& pool) const {
    LayerCost c;
    auto shape = infer_layer_shape(in, pool);
    c.output_shape = shape.output;
    c.warnings = std::move(shape.warnings);
    c.flops = pool_flops(in, pool);
    return c;
  }

  LayerCost operator()(const Flatten& f) const {
    LayerCost c;
    c.output_shape = infer_layer_shape(in, f).output;
    return c;
  }
};

}  // namespace

std::uint64_t dense_flops(std::uint64_t input_size, std::uint64_t output_size, bool use_bias) {
  const std::uint64_t mac_flops =
      checked_mul(2, checked_mul(input_size, output_size, "dense flops"), "dense flops");
  return use_bias ? checked_add(mac_flops, output_size, "dense flops") : mac_flops;
}

std::uint64_t conv_flops_per_filter(const TensorShape& input, const Conv2D& layer) {
  const auto out = infer_layer_shape(input, layer).output;
  return checked_mul(output_positions(out),
                     window_term(input.channels, layer.kernel_rows, layer.kernel_cols),
                     "conv flops");
}

std::uint64_t conv_flops(const TensorShape& input, const Conv2D& layer) {
  std::uint64_t per_filter = conv_flops_per_filter(input, layer);
  if (surcharged(layer.activation)) {
    per_filter = checked_add(per_filter,
                             window_term(input.channels, layer.kernel_rows, layer.kernel_cols),
                             "conv flops");
  }
  return checked_mul(per_filter, layer.num_filters, "conv flops");
}

std::uint64_t pool_flops(const TensorShape& input, const Pool2D& layer) {
  const auto out = infer_layer_shape(input, layer).output;
  return checked_mul(output_positions(out),
                     window_term(input.channels, layer.kernel_rows, layer.kernel_cols),
                     "pool flops");
}

std::uint64_t count_weights(const TensorShape& input, const LayerSpec& layer) {
  if (const auto* d = std::get_if<Dense>(&layer)) {
    const std::uint64_t w = checked_mul(input.elements(), d->output_size, "dense weights");
    return d->use_bias ? checked_add(w, d->output_size, "dense weights") : w;
  }
  if (const auto* c = std::get_if<Conv2D>(&layer)) {
    // Validates that the kernel fits, like the FLOP functions do.
    (void)infer_layer_shape(input, *c);
    std::uint64_t per_filter =
        checked_mul(checked_mul(input.channels, c->kernel_rows, "conv weights"), c->kernel_cols,
                    "conv weights");
    if (c->use_bias) per_filter = checked_add(per_filter, 1, "conv weights");
    return checked_mul(per_filter, c->num_filters, "conv weights");
  }
  if (const auto* p = std::get_if<Pool2D>(&layer)) {
    (void)infer_layer_shape(input, *p);
  }
  return 0;
}

LayerCost layer_cost(const TensorShape& input, const LayerSpec& layer) {
  return std::visit(CostVisitor{input}, layer);
}

NetworkCost network_cost(const NetworkSpec& spec) {
  validate(spec);
  NetworkCost total;
  total.per_layer.reserve(spec.layers.size());
  TensorShape current = spec.input_shape;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    LayerCost cost;
    try {
      cost = layer_cost(current, spec.layers[i]);
    } catch (const ShapeError& e) {
      throw ShapeError(e.message(), i);
    }
    total.total_flops = checked_add(total.total_flops, cost.flops, "total flops");
    total.total_macs = checked_add(total.total_macs, cost.macs, "total macs");
    total.total_weights = checked_add(total.total_weights, cost.weights, "total weights");
    current = cost.output_shape;
    total.per_layer.push_back(std::move(cost));
  }
  return total;
}

}  // namespace nncost
