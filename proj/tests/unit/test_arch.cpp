#include <doctest.h>

#include "nncost/arch.hpp"
#include "nncost/error.hpp"

using namespace nncost;

TEST_CASE("conv shape with same padding") {
  Conv2D c;
  c.kernel_rows = c.kernel_cols = 3;
  c.pad_rows = c.pad_cols = 1;
  c.num_filters = 8;
  const auto s = infer_layer_shape({100, 100, 3}, c);
  CHECK(s.output == TensorShape{100, 100, 8});
  CHECK(s.warnings.empty());
}

TEST_CASE("floored window counts warn") {
  Pool2D p{2, 2, 2, 2};
  const auto s = infer_layer_shape({5, 5, 1}, p);
  CHECK(s.output == TensorShape{2, 2, 1});
  CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("kernel larger than padded input is a shape error") {
  Conv2D c;
  c.kernel_rows = 4;
  CHECK_THROWS_AS(infer_layer_shape({3, 3, 1}, c), ShapeError);
  c.pad_rows = 1;
  CHECK(infer_layer_shape({3, 3, 1}, c).output == TensorShape{2, 3, 1});
  CHECK_THROWS_AS(infer_layer_shape({1, 1, 1}, Pool2D{2, 1, 1, 1}), ShapeError);
}

TEST_CASE("dense flattens implicitly; flatten reshapes") {
  CHECK(infer_layer_shape({4, 5, 2}, Dense{7, true, Activation::none}).output ==
        TensorShape{1, 1, 7});
  CHECK(infer_layer_shape({4, 5, 2}, Flatten{}).output == TensorShape{1, 1, 40});
}

TEST_CASE("infer_shapes chains and indexes errors") {
  Conv2D c;
  c.kernel_rows = c.kernel_cols = 3;
  NetworkSpec net{"n", {5, 5, 1}, {c, c, c}};
  try {
    infer_shapes(net);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(e.layer_index() == std::optional<std::size_t>(2));
  }
  net.layers.pop_back();
  const auto shapes = infer_shapes(net);
  REQUIRE(shapes.size() == 2);
  CHECK(shapes[1] == TensorShape{1, 1, 1});
}

TEST_CASE("validate names the offending field") {
  Conv2D c;
  c.stride_rows = 0;
  NetworkSpec net{"n", {5, 5, 1}, {Flatten{}, c}};
  try {
    validate(net);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("layers[1].stride_rows") != std::string::npos);
  }
  CHECK_THROWS_AS(validate(NetworkSpec{"n", {5, 5, 1}, {}}), ValidationError);
  CHECK_THROWS_AS(validate(NetworkSpec{"n", {0, 5, 1}, {Flatten{}}}), ValidationError);
}

TEST_CASE("activation names") {
  CHECK(to_string(Activation::leaky_relu) == "leaky_relu");
  CHECK(parse_activation("relu") == Activation::relu);
  CHECK_FALSE(parse_activation("gelu").has_value());
  CHECK(to_string(TensorShape{100, 100, 3}) == "100x100x3");
}
