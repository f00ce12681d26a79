#include <doctest.h>

#include "nncost/report.hpp"
#include "nncost/zoo.hpp"

using namespace nncost;
using nlohmann::json;

namespace {

const char* kAnalyze = R"({
  "network": "zoo:worked-example-3layer",
  "hardware": "nvidia-a100",
  "training": {"training_samples": 10000, "epochs": 100}
})";

}  // namespace

TEST_CASE("round_sig6") {
  CHECK(round_sig6(0.70121634) == 0.701216);
  CHECK(round_sig6(123456789.0) == 123457000.0);
  CHECK(round_sig6(0.0) == 0.0);
}

TEST_CASE("analyze request end to end") {
  const auto report = analyze(decode_analysis_request(kAnalyze));
  CHECK(report.network_cost.total_flops == 312532);
  CHECK(report.energy.e_forward_j == doctest::Approx(0.7013).epsilon(1e-3));
  const auto j = to_json(report);
  CHECK(j["network_cost"]["total_weights"] == 10032);
  CHECK(j["network_cost"]["per_layer"].size() == 3);
  CHECK(j["energy"]["e_training_j"].get<double>() == doctest::Approx(2.10365));
  const auto text = render_json(j);
  CHECK(text.back() == '\n');
  CHECK(json::parse(text) == j);
}

TEST_CASE("request decoding errors") {
  CHECK_THROWS_AS(decode_analysis_request("{\"network\": "), SyntaxError);
  CHECK_THROWS_AS(decode_analysis_request("[1]"), SchemaError);
  CHECK_THROWS_AS(decode_analysis_request(R"({"network": "zoo:nope", "hardware": "nvidia-a100",
      "training": {"training_samples": 1, "epochs": 1}})"),
                  NotFound);
  CHECK_THROWS_AS(decode_analysis_request(R"({"network": "zoo:dummy-linear", "hardware": "x",
      "training": {"training_samples": 1, "epochs": 1}})"),
                  NotFound);
  CHECK_THROWS_AS(decode_analysis_request(R"({"network": "file:/etc/passwd", "hardware": "nvidia-a100",
      "training": {"training_samples": 1, "epochs": 1}})"),
                  SchemaError);
  CHECK_THROWS_AS(decode_analysis_request(R"({"network": "zoo:dummy-linear", "hardware": "nvidia-a100",
      "training": {"training_samples": 1, "epochs": 1}, "bogus": 1})"),
                  SchemaError);
  try {
    decode_analysis_request("{\n  \"network\": \"zoo:dummy-linear\",\n  \"hardware\": \"x\"\n}");
    FAIL("expected NotFound");
  } catch (const NotFound& e) {
    REQUIRE(e.location());
    CHECK(e.location()->line == 3);
    CHECK(e.location()->column == 15);
  }
}

TEST_CASE("inline network and hardware with overrides") {
  const auto req = decode_analysis_request(R"({
    "network": {"format_version": "1.0", "network": {"name": "tiny",
      "input_shape": {"rows": 1, "cols": 1, "channels": 10},
      "layers": [{"type": "dense", "output_size": 5, "use_bias": false}]}},
    "hardware": {"id": "mine", "vendor": "v", "architecture": "a",
                 "flops_per_cycle": {"fp32": 2}, "efficiency_flops_per_watt": 1e9},
    "hardware_overrides": {"efficiency_flops_per_watt": 2e9},
    "training": {"training_samples": 2, "epochs": 3, "backward_multiplier": 1},
    "intensity": {"grams_co2eq_per_kwh": 100, "region_label": "x"}
  })");
  const auto r = analyze(req);
  CHECK(r.network_cost.total_flops == 100);
  CHECK(r.efficiency_flops_per_watt == 2e9);
  CHECK(r.energy.e_forward_j == doctest::Approx(100.0 / 2e9 * 6));
  CHECK(r.energy.e_training_j == doctest::Approx(2 * r.energy.e_forward_j));
  CHECK_FALSE(r.peak_flops.has_value());
}

TEST_CASE("lenient network parsing surfaces warnings") {
  const auto req = decode_analysis_request(R"({
    "strict": false,
    "network": {"format_version": "1.0", "network": {"name": "tiny",
      "input_shape": {"rows": 1, "cols": 1, "channels": 10},
      "layers": [{"type": "dense", "output_size": 5, "dropout": 0.1}]}},
    "hardware": "nvidia-t4",
    "training": {"training_samples": 1, "epochs": 1}
  })");
  REQUIRE(req.input_warnings.size() == 1);
  const auto r = analyze(req);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("compare sorts and isolates failures") {
  const auto req = decode_compare_request(R"({
    "networks": ["zoo:worked-example-3layer", "zoo:dummy-linear",
      {"format_version": "1.0", "network": {"name": "broken",
        "input_shape": {"rows": 2, "cols": 2, "channels": 1},
        "layers": [{"type": "pool2d", "kernel_rows": 3, "kernel_cols": 3,
                    "stride_rows": 1, "stride_cols": 1}]}}],
    "hardware": "nvidia-t4",
    "training": {"training_samples": 100, "epochs": 200},
    "sort_by": "weights", "descending": true
  })");
  const auto r = compare(req);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].name == "dummy-linear");
  CHECK(r.rows[1].name == "worked-example-3layer");
  CHECK(r.rows[1].weights == 10032);
  CHECK(r.rows[2].name == "broken");
  CHECK(r.rows[2].error_code == std::optional<std::string>("shape_error"));

  auto strict = req;
  strict.fail_fast = true;
  CHECK_THROWS_AS(compare(strict), ShapeError);

  auto single = req;
  single.networks.resize(1);
  CHECK_THROWS_AS(compare(single), DomainError);
}

TEST_CASE("compare: ranking by co2 equals ranking by flops") {
  CompareRequest req;
  for (const auto& e : model_zoo()) req.networks.push_back(e.spec);
  req.params.profile = builtin_database().get("nvidia-t4");
  req.params.training = {1000, 10, 2.0};
  req.sort_by = CompareColumn::flops;
  const auto by_flops = compare(req);
  req.sort_by = CompareColumn::co2;
  const auto by_co2 = compare(req);
  REQUIRE(by_flops.rows.size() == by_co2.rows.size());
  for (std::size_t i = 0; i < by_co2.rows.size(); ++i) CHECK(by_co2.rows[i].name == by_flops.rows[i].name);
}

TEST_CASE("curve request") {
  const auto r = curve(decode_curve_request(R"({
    "network": "zoo:pirnateco-stem-besteffort", "hardware": "nvidia-t4",
    "range": {"from": 1, "to": 1e10}
  })"));
  REQUIRE(r.carbon.curve);
  bool marked = false;
  for (const auto& p : *r.carbon.curve) marked |= p.predictions == kMobileUsers2025;
  CHECK(marked);
  CHECK_THROWS_AS(curve(decode_curve_request(R"({"network": "zoo:dummy-linear", "hardware": "nvidia-t4",
      "prediction_counts": [5, 3]})")),
                  DomainError);
}

TEST_CASE("csv quoting and renderers") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto report = analyze(decode_analysis_request(kAnalyze));
  const auto csv = render_csv(report);
  CHECK(csv.find("280028") != std::string::npos);
  CHECK(render_table(report).find("312532") != std::string::npos);
}

TEST_CASE("zero-cost network gives zero energy and carbon") {
  const auto r = analyze(decode_analysis_request(R"({
    "network": {"format_version": "1.0", "network": {"name": "flat",
      "input_shape": {"rows": 4, "cols": 4, "channels": 1}, "layers": [{"type": "flatten"}]}},
    "hardware": "nvidia-a100", "training": {"training_samples": 10, "epochs": 10}})"));
  CHECK(r.network_cost.total_flops == 0);
  CHECK(r.energy.e_training_j == 0.0);
  CHECK(r.energy.e_per_prediction_j == 0.0);
  CHECK(r.carbon.training_g == 0.0);
}

TEST_CASE("compare: duplicates give identical rows, widening raises FLOPs") {
  CompareRequest req;
  auto base = zoo_entry("worked-example-3layer").spec;
  auto wide = base;
  wide.network.name = "widened";
  std::get<Conv2D>(wide.network.layers[0]).num_filters *= 2;
  req.networks = {base, base, wide};
  req.params.profile = builtin_database().get("nvidia-a100");
  const auto r = compare(req);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].total_flops == r.rows[1].total_flops);
  CHECK(r.rows[0].training_g == r.rows[1].training_g);
  CHECK(r.rows[2].name == "widened");
  CHECK(r.rows[2].total_flops > r.rows[0].total_flops);
  const auto j = json::parse(render_json(to_json(r)));
  CHECK(j["rows"][2]["total_flops"] == r.rows[2].total_flops);
}

TEST_CASE("curve range ending at the mobile-user count") {
  const auto r = curve(decode_curve_request(R"({
    "network": "zoo:pirnateco-stem-besteffort", "hardware": "nvidia-t4",
    "range": {"from": 1, "to": 7.4e9}})"));
  REQUIRE(r.carbon.curve);
  CHECK(r.carbon.curve->back().predictions == kMobileUsers2025);
  CHECK(r.carbon.curve->back().marker == "mobile-users-2025");
}
