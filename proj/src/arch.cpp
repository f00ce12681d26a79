#include "nncost/arch.hpp"

#include <sstream>

#include "nncost/checked.hpp"
#include "nncost/error.hpp"

namespace nncost {

namespace {

// Number of window positions along one axis: (extent - kernel + 2*pad) / stride + 1,
// floored when the division is inexact.
std::uint64_t window_positions(std::uint64_t extent, std::uint64_t kernel, std::uint64_t stride,
                               std::uint64_t pad, std::string_view axis,
                               std::vector<std::string>& warnings) {
  const std::uint64_t padded = checked_add(extent, checked_mul(2, pad, "padding"), "padded extent");
  if (kernel > padded) {
    std::ostringstream msg;
    msg << "kernel " << axis << " " << kernel << " exceeds padded input extent " << padded;
    throw ShapeError(msg.str());
  }
  const std::uint64_t span = padded - kernel;
  if (span % stride != 0) {
    std::ostringstream msg;
    msg << axis << ": (" << extent << " - " << kernel;
    if (pad != 0) msg << " + 2*" << pad;
    msg << ") / " << stride << " is not integral; output floored to " << span / stride + 1;
    warnings.push_back(msg.str());
  }
  return span / stride + 1;
}

struct ShapeVisitor {
  const TensorShape& in;
  std::vector<std::string>& warnings;

  TensorShape operator()(const Dense& d) const { return {1, 1, d.output_size}; }

  TensorShape operator()(const Conv2D& c) const {
    return {window_positions(in.rows, c.kernel_rows, c.stride_rows, c.pad_rows, "rows", warnings),
            window_positions(in.cols, c.kernel_cols, c.stride_cols, c.pad_cols, "cols", warnings),
            c.num_filters};
  }

  TensorShape operator()(const Pool2D& p) const {
    return {window_positions(in.rows, p.kernel_rows, p.stride_rows, 0, "rows", warnings),
            window_positions(in.cols, p.kernel_cols, p.stride_cols, 0, "cols", warnings),
            in.channels};
  }

  TensorShape operator()(const Flatten&) const { return {1, 1, in.elements()}; }
};

void require_positive(std::uint64_t v, const std::string& where) {
  if (v < 1) throw ValidationError(where + " must be >= 1");
}

}  // namespace

std::uint64_t TensorShape::elements() const {
  return checked_mul(checked_mul(rows, cols, "tensor size"), channels, "tensor size");
}

std::string to_string(const TensorShape& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols) + "x" + std::to_string(s.channels);
}

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::none: return "none";
    case Activation::relu: return "relu";
    case Activation::leaky_relu: return "leaky_relu";
  }
  return "none";
}

std::optional<Activation> parse_activation(std::string_view s) {
  if (s == "none") return Activation::none;
  if (s == "relu") return Activation::relu;
  if (s == "leaky_relu") return Activation::leaky_relu;
  return std::nullopt;
}

std::string_view layer_kind(const LayerSpec& layer) {
  struct {
    std::string_view operator()(const Dense&) const { return "dense"; }
    std::string_view operator()(const Conv2D&) const { return "conv2d"; }
    std::string_view operator()(const Pool2D&) const { return "pool2d"; }
    std::string_view operator()(const Flatten&) const { return "flatten"; }
  } kind;
  return std::visit(kind, layer);
}

void validate(const NetworkSpec& spec) {
  require_positive(spec.input_shape.rows, "input_shape.rows");
  require_positive(spec.input_shape.cols, "input_shape.cols");
  require_positive(spec.input_shape.channels, "input_shape.channels");
  if (spec.layers.empty()) throw ValidationError("layers must not be empty");

  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const std::string at = "layers[" + std::to_string(i) + "].";
    const auto& layer = spec.layers[i];
    if (const auto* d = std::get_if<Dense>(&layer)) {
      require_positive(d->output_size, at + "output_size");
    } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
      require_positive(c->kernel_rows, at + "kernel_rows");
      require_positive(c->kernel_cols, at + "kernel_cols");
      require_positive(c->stride_rows, at + "stride_rows");
      require_positive(c->stride_cols, at + "stride_cols");
      require_positive(c->num_filters, at + "num_filters");
    } else if (const auto* p = std::get_if<Pool2D>(&layer)) {
      require_positive(p->kernel_rows, at + "kernel_rows");
      require_positive(p->kernel_cols, at + "kernel_cols");
      require_positive(p->stride_rows, at + "stride_rows");
      require_positive(p->stride_cols, at + "stride_cols");
    }
  }
}

LayerShape infer_layer_shape(const TensorShape& input, const LayerSpec& layer) {
  LayerShape out;
  out.output = std::visit(ShapeVisitor{input, out.warnings}, layer);
  return out;
}

std::vector<LayerShape> infer_layer_shapes(const NetworkSpec& spec) {
  validate(spec);
  std::vector<LayerShape> shapes;
  shapes.reserve(spec.layers.size());
  TensorShape current = spec.input_shape;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    try {
      shapes.push_back(infer_layer_shape(current, spec.layers[i]));
    } catch (const ShapeError& e) {
      throw ShapeError(e.message(), i);
    }
    current = shapes.back().output;
  }
  return shapes;
}

std::vector<TensorShape> infer_shapes(const NetworkSpec& spec) {
  std::vector<TensorShape> out;
  for (auto& s : infer_layer_shapes(spec)) out.push_back(s.output);
  return out;
}

}  // namespace nncost
