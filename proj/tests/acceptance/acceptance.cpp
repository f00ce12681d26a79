// Acceptance suite: one PASS/FAIL line per primary criterion.
//   nncost_acceptance [--update-golden]

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracle/loop_count.hpp"
#include "../support/process.hpp"
#include "nncost/cost.hpp"
#include "nncost/energy.hpp"
#include "nncost/error.hpp"
#include "nncost/hardware.hpp"
#include "nncost/report.hpp"
#include "nncost/service.hpp"
#include "nncost/spec_io.hpp"
#include "nncost/zoo.hpp"

namespace fs = std::filesystem;
using namespace nncost;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool update_golden = false;

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

NetworkSpec worked_example(Activation conv_activation) {
  Conv2D conv;
  conv.kernel_rows = conv.kernel_cols = 3;
  conv.pad_rows = conv.pad_cols = 1;
  conv.num_filters = 1;
  conv.activation = conv_activation;
  return {"worked-example", {100, 100, 3},
          {conv, Pool2D{2, 2, 2, 2}, Dense{4, true, Activation::none}}};
}

// 1
Outcome worked_example_total() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto report = analyze(decode_analysis_request(R"({
    "network": "zoo:worked-example-3layer", "hardware": "nvidia-a100",
    "training": {"training_samples": 10000, "epochs": 100}})"));
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const auto flops = report.network_cost.total_flops;
  const double mflops = report.network_cost.mflops();
  o.require(flops >= 312504 && flops <= 312532, "total_flops out of range");
  o.require(std::fabs(mflops - 0.312) <= 0.001, "MFLOPs not within 0.001 of 0.312");
  o.require(ms < 1000, "too slow");
  o.detail = o.ok ? "total_flops=" + std::to_string(flops) + ", " + fmt("%.6f", mflops) +
                        " MFLOPs (|x-0.312|=" + fmt("%.6f", std::fabs(mflops - 0.312)) +
                        " <= 0.001), " + fmt("%.2f", ms) + " ms"
                  : o.detail;
  return o;
}

// 2
Outcome per_layer_decomposition() {
  Outcome o;
  for (auto act : {Activation::relu, Activation::none}) {
    const auto net = worked_example(act);
    const auto cost = network_cost(net);
    const std::uint64_t want_conv = act == Activation::relu ? 280028 : 280000;
    o.require(cost.per_layer[0].flops == want_conv, "conv closed form");
    o.require(cost.per_layer[1].flops == 12500, "pool closed form");
    o.require(cost.per_layer[2].flops == 20004, "dense closed form");

    const auto oc = oracle::conv({100, 100, 3}, {3, 3, 1, 1, 1, 1}, 1, true, act != Activation::none);
    const auto op = oracle::pool({100, 100, 1}, 2, 2, 2, 2);
    const auto od = oracle::dense({50, 50, 1}, 4, true);
    o.require(oc && oc->flops == want_conv, "conv oracle");
    o.require(op && op->flops == 12500, "pool oracle");
    o.require(od.flops == 20004, "dense oracle");
  }
  if (o.ok) o.detail = "conv 280028 (relu) / 280000 (none), pool 12500, dense 20004; closed form == oracle";
  return o;
}

// 3
Outcome carbon_conversion() {
  Outcome o;
  const CarbonIntensity ci{250, "us-west"};
  const struct {
    double kj, grams;
  } rows[] = {{152, 10.6}, {264, 18.3}, {2547, 176.9}};
  std::string detail;
  for (const auto& r : rows) {
    const double g = carbon_footprint(r.kj * 1e3, ci);
    o.require(std::fabs(g - r.grams) <= 0.05, fmt("%.0f kJ off", r.kj));
    detail += fmt("%.0f kJ", r.kj) + "->" + fmt("%.3f g", g) + "  ";
  }
  if (o.ok) o.detail = detail + "(all within 0.05 g)";
  return o;
}

// 4
Outcome energy_law() {
  Outcome o;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> flops(0, 50'000'000'000ULL), count(1, 100000),
      k(2, 9);
  std::uniform_real_distribution<double> eff_exp(8.0, 13.0);
  const double tol = 1e-12;
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const auto m = flops(rng);
    const double eff = std::pow(10.0, eff_exp(rng));
    const TrainingConfig cfg{count(rng), count(rng) % 500 + 1, kDefaultBackwardMultiplier};
    const auto r = energy_training(m, eff, cfg);
    o.require(r.e_training_j == 3 * r.e_forward_j, "E_training != 3 E_fp");
    o.require(r.e_backward_j == 2 * r.e_forward_j, "E_bp != 2 E_fp");
    const auto f = k(rng);
    if (m < 5'000'000'000ULL) {
      o.require(rel_diff(energy_forward(m * f, eff, cfg), f * r.e_forward_j) <= tol, "linear in flops");
    }
    TrainingConfig more = cfg;
    more.training_samples *= f;
    o.require(rel_diff(energy_forward(m, eff, more), f * r.e_forward_j) <= tol, "linear in samples");
    more = cfg;
    more.epochs *= f;
    o.require(rel_diff(energy_forward(m, eff, more), f * r.e_forward_j) <= tol, "linear in epochs");
    o.require(rel_diff(energy_forward(m, eff * f, cfg) * f, r.e_forward_j) <= tol,
              "inverse in efficiency");
    const auto n = count(rng);
    o.require(rel_diff(energy_prediction(m, eff, n * f), f * energy_prediction(m, eff, n)) <= tol,
              "linear in input count");
    const CarbonIntensity ci{250, "x"};
    const double kwh = r.e_training_j / kJoulesPerKwh;
    o.require(rel_diff(carbon_footprint(r.e_training_j, ci), kwh * 250) <= tol, "kWh path");
  }
  if (o.ok) o.detail = "1000 random tuples: E_training == 3*E_fp exactly; linearity/inverse within 1e-12";
  return o;
}

// 5
Outcome a100_scenario() {
  Outcome o;
  const auto& a100 = builtin_database().get("nvidia-a100");
  const double eff = efficiency_flops_per_watt(a100, DataType::fp32);
  const auto r = energy_training(312532, eff, {10000, 100, 2.0});
  o.require(std::fabs(r.e_forward_j - 0.7013) <= 0.001, "E_fp off");
  o.detail = "E_fp=" + fmt("%.4f J", r.e_forward_j) + ", E_training=" + fmt("%.4f J", r.e_training_j) +
             ", per prediction " + fmt("%.3e J", r.e_per_prediction_j);
  return o;
}

// 6
Outcome oracle_sweep() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t cases = 0, shape_errors = 0;
  auto compare_layer = [&](const TensorShape& in, const LayerSpec& layer,
                           const std::optional<oracle::Count>& want, const std::string& what) {
    ++cases;
    if (!want) {
      bool threw = false;
      try {
        layer_cost(in, layer);
      } catch (const ShapeError&) {
        threw = true;
      }
      ++shape_errors;
      o.require(threw, what + ": expected ShapeError");
      return;
    }
    try {
      const auto c = layer_cost(in, layer);
      const TensorShape out{static_cast<std::uint64_t>(want->out.rows),
                            static_cast<std::uint64_t>(want->out.cols),
                            static_cast<std::uint64_t>(want->out.channels)};
      o.require(c.flops == want->flops, what + ": flops");
      o.require(c.weights == want->weights, what + ": weights");
      o.require(c.output_shape == out, what + ": shape");
    } catch (const Error& e) {
      o.require(false, what + ": unexpected " + e.what());
    }
  };

  for (long r = 1; r <= 8; ++r)
    for (long c = 1; c <= 8; ++c)
      for (long kr = 1; kr <= 8; ++kr)
        for (long kc = 1; kc <= 8; ++kc)
          for (long sr = 1; sr <= 3; ++sr)
            for (long sc = 1; sc <= 3; ++sc) {
              for (long pr = 0; pr <= 2; ++pr)
                for (long pc = 0; pc <= 2; ++pc) {
                  const long ch = 1 + (r + c + kr) % 3;
                  const long filters = 1 + (kc + sr) % 2;
                  const bool relu = (pr + pc + sc) % 2 == 0;
                  const bool bias = (r + kc) % 2 == 0;
                  Conv2D conv{static_cast<std::uint64_t>(kr), static_cast<std::uint64_t>(kc),
                              static_cast<std::uint64_t>(sr), static_cast<std::uint64_t>(sc),
                              static_cast<std::uint64_t>(pr), static_cast<std::uint64_t>(pc),
                              static_cast<std::uint64_t>(filters), bias,
                              relu ? Activation::relu : Activation::none};
                  const TensorShape in{static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c),
                                       static_cast<std::uint64_t>(ch)};
                  compare_layer(in, conv,
                                oracle::conv({r, c, ch}, {kr, kc, sr, sc, pr, pc}, filters, bias, relu),
                                "conv");
                }
              for (long ch = 1; ch <= 3; ch += 2) {
                Pool2D pool{static_cast<std::uint64_t>(kr), static_cast<std::uint64_t>(kc),
                            static_cast<std::uint64_t>(sr), static_cast<std::uint64_t>(sc)};
                const TensorShape in{static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c),
                                     static_cast<std::uint64_t>(ch)};
                compare_layer(in, pool, oracle::pool({r, c, ch}, kr, kc, sr, sc), "pool");
              }
            }
  for (long r = 1; r <= 8; ++r)
    for (long c = 1; c <= 8; ++c)
      for (long ch = 1; ch <= 8; ++ch)
        for (long out = 1; out <= 8; ++out)
          for (bool bias : {true, false}) {
            const TensorShape in{static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c),
                                 static_cast<std::uint64_t>(ch)};
            compare_layer(in, Dense{static_cast<std::uint64_t>(out), bias, Activation::none},
                          oracle::dense({r, c, ch}, out, bias), "dense");
          }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(s < 60, "sweep exceeded 60 s");
  if (o.ok) {
    o.detail = std::to_string(cases) + " cases (" + std::to_string(shape_errors) +
               " shape-error agreements), 0 mismatches, " + fmt("%.1f s", s);
  }
  return o;
}

// 7
Outcome table1_database() {
  Outcome o;
  const auto& db = builtin_database();
  struct Row {
    const char* id;
    std::vector<std::pair<DataType, double>> values;
    std::vector<DataType> absent;
  };
  const Row rows[] = {
      {"arm-cortex-a72", {{DataType::fp32, 8}, {DataType::fp16, 8}}, {DataType::fp64}},
      {"intel-skylake", {{DataType::fp64, 16}, {DataType::fp32, 32}, {DataType::fp16, 32}}, {}},
      {"amd-zen2", {{DataType::fp64, 16}, {DataType::fp32, 32}, {DataType::fp16, 32}}, {}},
      {"amd-zen3", {{DataType::fp64, 16}, {DataType::fp32, 32}, {DataType::fp16, 32}}, {}},
      {"intel-icelake", {{DataType::fp64, 32}, {DataType::fp32, 64}, {DataType::fp16, 64}}, {}},
      {"nvidia-pascal", {{DataType::fp32, 2}, {DataType::fp16, 16}}, {DataType::fp64}},
      {"nvidia-turing", {{DataType::fp32, 2}, {DataType::fp16, 16}}, {DataType::fp64}},
      {"nvidia-ampere", {{DataType::fp32, 2}, {DataType::fp16, 32}}, {DataType::fp64}},
  };
  for (const auto& row : rows) {
    const auto* p = db.find(row.id);
    o.require(p != nullptr, std::string("missing ") + row.id);
    if (!p) break;
    for (const auto& [t, v] : row.values) {
      auto it = p->flops_per_cycle.find(t);
      o.require(it != p->flops_per_cycle.end() && it->second == v,
                std::string(row.id) + " " + std::string(to_string(t)));
    }
    for (auto t : row.absent) o.require(!p->flops_per_cycle.count(t), std::string(row.id) + " extra dtype");
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> clock(0.3e9, 5e9);
  std::uniform_int_distribution<std::uint64_t> cores(1, 20000);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(rows) - 1);
  for (int i = 0; i < 20; ++i) {
    const auto& row = rows[pick(rng)];
    auto p = db.get(row.id);
    const double hz = clock(rng);
    const auto n = cores(rng);
    p = apply_overrides(std::move(p), {hz, n, std::nullopt});
    for (const auto& [t, v] : row.values) {
      o.require(peak_flops(p, t) == v * hz * static_cast<double>(n), "peak product");
    }
  }
  if (o.ok) o.detail = "8 architecture rows (6 families) exact; 20 random clock/core peak products exact";
  return o;
}

// 8
Outcome curve_shape() {
  Outcome o;
  const CarbonIntensity ci{250, "us-west"};
  const auto counts = log_spaced_counts(1, 10'000'000'000ULL, 1);
  std::string detail;
  for (const auto& p : builtin_database().profiles()) {
    if (p.vendor != "Nvidia") continue;
    const double eff = efficiency_flops_per_watt(p, DataType::fp32);
    const auto r = co2_vs_predictions(345'000'000ULL, eff, ci, counts);
    const auto& c = *r.curve;
    const CurvePoint* mobile = nullptr;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].predictions == kMobileUsers2025) mobile = &c[i];
      if (i > 0) {
        const double ratio = c[i].grams / c[i - 1].grams;
        const double want = static_cast<double>(c[i].predictions) / c[i - 1].predictions;
        o.require(rel_diff(ratio, want) <= 1e-12, p.id + ": non-linear step");
      }
    }
    o.require(mobile != nullptr && mobile->marker == "mobile-users-2025", p.id + ": no 7.4e9 point");
    if (!mobile) continue;
    o.require(mobile->grams >= 100 && mobile->grams <= 100'000, p.id + ": outside 0.1-100 kg");
    detail += p.id + "=" + fmt("%.2f kg ", mobile->grams / 1000);
  }
  if (o.ok) o.detail = "linear ratios exact; 7.4e9 point: " + detail;
  return o;
}

// 9
std::string random_text(std::mt19937_64& rng) {
  static const char* pieces[] = {"net", " ", "a: b", "#x", "\"", "'", "\\", "é", "-", "1.5",
                                 "yes", "null", "[", "}", "&a", "*", "!", "%", "|"};
  std::uniform_int_distribution<std::size_t> n(1, 5), pick(0, std::size(pieces) - 1);
  std::string s;
  for (auto i = n(rng); i > 0; --i) s += pieces[pick(rng)];
  return s;
}

SpecDocument random_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> small(1, 8), big(1, 4096), pad(0, 2), kind(0, 3),
      layers(1, 10);
  std::bernoulli_distribution coin;
  std::uniform_int_distribution<int> act(0, 2);
  SpecDocument d;
  d.network.name = random_text(rng);
  d.network.input_shape = {big(rng), big(rng), small(rng)};
  for (auto i = layers(rng); i > 0; --i) {
    switch (kind(rng)) {
      case 0:
        d.network.layers.push_back(Dense{big(rng), coin(rng), static_cast<Activation>(act(rng))});
        break;
      case 1:
        d.network.layers.push_back(Conv2D{small(rng), small(rng), small(rng), small(rng), pad(rng),
                                          pad(rng), big(rng), coin(rng),
                                          static_cast<Activation>(act(rng))});
        break;
      case 2:
        d.network.layers.push_back(Pool2D{small(rng), small(rng), small(rng), small(rng)});
        break;
      default:
        d.network.layers.push_back(Flatten{});
    }
  }
  if (coin(rng)) d.metadata.author = random_text(rng);
  if (coin(rng)) d.metadata.source = random_text(rng);
  if (coin(rng)) d.metadata.citation = random_text(rng);
  return d;
}

Outcome determinism_and_round_trip() {
  Outcome o;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100 && o.ok; ++i) {
    const auto doc = random_spec(rng);
    const auto text = serialize_spec(doc);
    const auto back = parse_spec(text);
    o.require(back == doc, "round trip changed spec #" + std::to_string(i));
    o.require(serialize_spec(back) == text, "re-serialization differs #" + std::to_string(i));
  }

  const fs::path golden = NNCOST_GOLDEN_DIR;
  std::vector<fs::path> requests;
  for (const auto& e : fs::directory_iterator(golden / "requests")) requests.push_back(e.path());
  std::sort(requests.begin(), requests.end());
  o.require(requests.size() == 20, "expected 20 golden requests, found " + std::to_string(requests.size()));

  Server server;
  const int port = server.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  for (const auto& req : requests) {
    const auto name = req.stem().string();
    const auto endpoint = name.substr(0, name.find('_'));
    const auto body = testsupport::slurp(req);
    const auto cli = testsupport::run(std::string(NNCOST_CLI_PATH) + " " + endpoint +
                                      " --request " + req.string() + " --format json");
    auto http = client.Post("/api/v1/" + endpoint, body, "application/json");
    o.require(cli.status == 0, name + ": CLI exit " + std::to_string(cli.status) + " " + cli.err);
    o.require(http && http->status == 200, name + ": HTTP failed");
    if (!http) continue;
    o.require(cli.out == http->body, name + ": CLI and HTTP bytes differ");
    const auto expected_path = golden / "expected" / (name + ".json");
    if (update_golden) {
      fs::create_directories(expected_path.parent_path());
      std::ofstream(expected_path, std::ios::binary) << http->body;
    } else {
      o.require(fs::exists(expected_path) && testsupport::slurp(expected_path) == http->body,
                name + ": differs from stored golden output");
    }
  }
  server.stop();
  if (o.ok) {
    o.detail = "100 random specs parse->serialize->parse identical; " +
               std::to_string(requests.size()) + " golden requests byte-identical (CLI == HTTP == stored)";
  }
  return o;
}

// 10
Outcome comparison_report() {
  Outcome o;
  CompareRequest req;
  for (const auto& e : model_zoo()) req.networks.push_back(e.spec);
  req.params.profile = builtin_database().get("nvidia-t4");
  req.params.training = {1000, 200, 2.0};
  const auto report = compare(req);
  const auto csv = render_csv(report);
  const auto header = csv.substr(0, csv.find('\n'));
  o.require(header.find("weights") != std::string::npos, "no weights column");
  o.require(header.find("total_flops") != std::string::npos, "no flops column");
  o.require(report.rows.size() == model_zoo().size(), "row count");
  const CompareRow* ex = nullptr;
  for (const auto& r : report.rows) {
    if (r.name == "worked-example-3layer") ex = &r;
  }
  o.require(ex && ex->weights == 10032, "worked example weights");
  const auto cost = network_cost(zoo_entry("worked-example-3layer").spec.network);
  o.require(cost.per_layer[0].weights == 28 && cost.per_layer[1].weights == 0 &&
                cost.per_layer[2].weights == 10004,
            "per-layer weights");
  if (o.ok) {
    o.detail = std::to_string(report.rows.size()) +
               " zoo rows with weights/FLOPs columns; worked example 10032 = 28 + 0 + 10004";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--update-golden") update_golden = true;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked-example total", worked_example_total},
      {"per-layer decomposition", per_layer_decomposition},
      {"carbon conversion exactness", carbon_conversion},
      {"energy law", energy_law},
      {"A100 scenario", a100_scenario},
      {"oracle equivalence sweep", oracle_sweep},
      {"per-cycle throughput table", table1_database},
      {"CO2 curve shape", curve_shape},
      {"determinism & round-trip", determinism_and_round_trip},
      {"comparison report", comparison_report},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s [%2d] %-28s %s\n", o.ok ? "PASS" : "FAIL", index++, name.c_str(),
                o.detail.c_str());
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
