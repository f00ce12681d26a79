// nncost: FLOPs, energy and carbon footprint of layer-chain neural networks.

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nncost/report.hpp"
#include "nncost/service.hpp"
#include "nncost/spec_io.hpp"
#include "nncost/zoo.hpp"

namespace {

using namespace nncost;

enum class Format { table, json, csv };

struct SharedFlags {
  std::string hardware;
  std::string profiles_file;
  std::string dtype = "fp32";
  std::uint64_t samples = 1;
  std::uint64_t epochs = 1;
  double backward_multiplier = kDefaultBackwardMultiplier;
  double carbon_intensity = kDefaultCarbonIntensity;
  std::string region = "us-west";
  std::optional<double> clock_hz;
  std::optional<std::uint64_t> cores;
  std::optional<double> efficiency;
  Format format = Format::table;
  std::string output;
  bool strict = false;
  std::string request_file;
};

void add_shared(CLI::App* cmd, SharedFlags& f, bool with_training) {
  cmd->add_option("--hardware", f.hardware, "Hardware profile id (see `hardware list`)");
  cmd->add_option("--profiles", f.profiles_file,
                  "Extra .hwspec profile file, searched before the bundled profiles")
      ->check(CLI::ExistingFile);
  cmd->add_option("--dtype", f.dtype, "Data type: fp64, fp32, fp16, bf16, int8, int1")
      ->capture_default_str();
  if (with_training) {
    cmd->add_option("--samples", f.samples, "Training samples per epoch")->capture_default_str();
    cmd->add_option("--epochs", f.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--backward-multiplier", f.backward_multiplier,
                    "Backward-pass cost relative to forward")
        ->capture_default_str();
  }
  cmd->add_option("--carbon-intensity", f.carbon_intensity, "Grams CO2eq per kWh")
      ->capture_default_str();
  cmd->add_option("--region", f.region, "Label for the carbon intensity")->capture_default_str();
  cmd->add_option("--clock-hz", f.clock_hz, "Override the profile clock (Hz)");
  cmd->add_option("--cores", f.cores, "Override the profile core count");
  cmd->add_option("--efficiency", f.efficiency, "Override the profile efficiency (FLOPS/W)");
  cmd->add_option("--format", f.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{
              {"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}},
          CLI::ignore_case));
  cmd->add_option("-o,--output", f.output, "Write the report to a file instead of stdout");
  cmd->add_flag("--strict", f.strict, "Reject unknown fields in spec files");
  cmd->add_option("--request", f.request_file,
                  "JSON request file (same body as the HTTP API); replaces the other inputs")
      ->check(CLI::ExistingFile);
}

struct Context {
  ProfileDatabase extra;
  bool has_extra = false;
};

HardwareProfile resolve_profile(const SharedFlags& f, const Context& ctx) {
  if (f.hardware.empty()) throw CLI::ValidationError("--hardware", "a hardware profile id is required");
  const HardwareProfile* p = ctx.has_extra ? ctx.extra.find(f.hardware) : nullptr;
  HardwareProfile profile = p ? *p : builtin_database().get(f.hardware);
  ProfileOverrides o{f.clock_hz, f.cores, f.efficiency};
  return o.empty() ? profile : apply_overrides(std::move(profile), o);
}

AnalysisParams params_from(const SharedFlags& f, const Context& ctx) {
  AnalysisParams p;
  p.profile = resolve_profile(f, ctx);
  auto dtype = parse_data_type(f.dtype);
  if (!dtype) throw SchemaError("unknown dtype '" + f.dtype + "'");
  p.dtype = *dtype;
  p.training = {f.samples, f.epochs, f.backward_multiplier};
  p.intensity = {f.carbon_intensity, f.region};
  return p;
}

SpecDocument load_network(const std::string& ref, bool strict, std::vector<std::string>& warnings) {
  if (ref.rfind("zoo:", 0) == 0) return zoo_entry(ref.substr(4)).spec;
  std::vector<Diagnostic> diags;
  auto doc = parse_spec(read_file(ref), ParseOptions{strict}, &diags);
  for (const auto& d : diags) warnings.push_back(ref + ": " + to_string(d.location) + ": " + d.message);
  return doc;
}

RequestContext request_context(const SharedFlags& f) {
  RequestContext rc;
  rc.allow_files = true;
  rc.base_dir = std::filesystem::path(f.request_file).parent_path().string();
  return rc;
}

void emit(const SharedFlags& f, const std::string& data) {
  if (f.output.empty()) {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream out(f.output, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + f.output + "'");
  out << data;
}

template <class Report>
std::string render(const Report& r, Format format) {
  switch (format) {
    case Format::json: return render_json(to_json(r));
    case Format::csv: return render_csv(r);
    case Format::table: break;
  }
  return render_table(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nncost: per-layer FLOPs, weights, energy and CO2 footprint of neural networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SharedFlags shared;
  Context ctx;

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-layer cost, energy and carbon report");
  std::string analyze_spec;
  std::vector<std::uint64_t> analyze_counts;
  bool analyze_curve_training = false;
  analyze_cmd->add_option("spec", analyze_spec, "Network .nnspec file or zoo:<id>");
  analyze_cmd->add_option("--predictions", analyze_counts,
                          "Prediction counts for the CO2 curve (strictly increasing)");
  analyze_cmd->add_flag("--curve-include-training", analyze_curve_training,
                        "Add the training footprint to every curve point");
  add_shared(analyze_cmd, shared, true);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side weights, FLOPs, energy, CO2");
  std::vector<std::string> compare_specs;
  std::string sort_by = "flops";
  bool descending = false;
  bool fail_fast = false;
  compare_cmd->add_option("specs", compare_specs, "Two or more .nnspec files or zoo:<id>");
  compare_cmd->add_option("--sort-by", sort_by, "name, weights, flops, energy or co2")
      ->capture_default_str();
  compare_cmd->add_flag("--descending", descending, "Sort descending");
  compare_cmd->add_flag("--fail-fast", fail_fast, "Abort on the first failing network");
  add_shared(compare_cmd, shared, true);

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "CO2 vs number of predictions");
  std::string curve_spec;
  std::vector<std::uint64_t> curve_counts;
  double range_from = 1;
  double range_to = 7.4e9;
  unsigned steps_per_decade = 1;
  bool include_training = false;
  std::string plot_data;
  curve_cmd->add_option("spec", curve_spec, "Network .nnspec file or zoo:<id>");
  curve_cmd->add_option("--predictions", curve_counts, "Explicit prediction counts");
  curve_cmd->add_option("--from", range_from, "First count of the log-spaced range")
      ->capture_default_str();
  curve_cmd->add_option("--to", range_to, "Last count of the log-spaced range")
      ->capture_default_str();
  curve_cmd->add_option("--steps-per-decade", steps_per_decade, "Log steps per decade")
      ->capture_default_str();
  curve_cmd->add_flag("--include-training", include_training,
                      "Add the one-time training footprint as an offset");
  curve_cmd->add_option("--plot-data", plot_data, "Also write the curve as CSV to this file");
  add_shared(curve_cmd, shared, true);

  // hardware
  auto* hardware_cmd = app.add_subcommand("hardware", "Bundled hardware profiles");
  hardware_cmd->require_subcommand(1);
  auto* hardware_list = hardware_cmd->add_subcommand("list", "List profiles and peak FP32 FLOPS");
  auto* hardware_show = hardware_cmd->add_subcommand("show", "Print one profile as .hwspec");
  auto* hardware_export = hardware_cmd->add_subcommand("export", "Print all profiles as .hwspec");
  std::string hardware_id;
  hardware_show->add_option("id", hardware_id)->required();

  // zoo
  auto* zoo_cmd = app.add_subcommand("zoo", "Bundled reference networks");
  zoo_cmd->require_subcommand(1);
  auto* zoo_list = zoo_cmd->add_subcommand("list", "List zoo entries");
  auto* zoo_show = zoo_cmd->add_subcommand("show", "Print one entry as .nnspec");
  std::string zoo_id;
  zoo_show->add_option("id", zoo_id)->required();

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Parse a spec file and run shape inference");
  std::string validate_spec;
  bool validate_strict = false;
  validate_cmd->add_option("spec", validate_spec, "Network .nnspec file")->required();
  validate_cmd->add_flag("--strict", validate_strict, "Reject unknown fields");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the JSON HTTP service");
  int port = 8080;
  std::string bind = "127.0.0.1";
  serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--bind", bind, "Bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  bool json_errors = shared.format == Format::json;
  try {
    if (!shared.profiles_file.empty()) {
      ctx.extra = ProfileDatabase(parse_profiles(read_file(shared.profiles_file)).profiles);
      ctx.has_extra = true;
    }

    if (*analyze_cmd) {
      AnalysisRequest req;
      if (!shared.request_file.empty()) {
        RequestContext rc = request_context(shared);
        if (ctx.has_extra) rc.database = &ctx.extra;
        req = decode_analysis_request(read_file(shared.request_file), rc);
      } else {
        if (analyze_spec.empty()) throw CLI::ValidationError("spec", "a network spec is required");
        req.network = load_network(analyze_spec, shared.strict, req.input_warnings);
        req.params = params_from(shared, ctx);
        if (!analyze_counts.empty()) req.prediction_counts = analyze_counts;
        req.curve_includes_training = analyze_curve_training;
      }
      const auto report = analyze(req);
      if (shared.format != Format::json) {
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      }
      emit(shared, render(report, shared.format));
      return 0;
    }

    if (*compare_cmd) {
      CompareRequest req;
      if (!shared.request_file.empty()) {
        RequestContext rc = request_context(shared);
        if (ctx.has_extra) rc.database = &ctx.extra;
        req = decode_compare_request(read_file(shared.request_file), rc);
      } else {
        req.fail_fast = fail_fast;
        for (const auto& ref : compare_specs) {
          std::vector<std::string> ignored;
          try {
            req.networks.push_back(load_network(ref, shared.strict, ignored));
          } catch (const Error& e) {
            if (fail_fast) throw;
            CompareRow row;
            row.name = ref;
            row.error_code = std::string(error_code(e.kind()));
            row.error_message = e.what();
            req.failed_inputs.push_back(std::move(row));
          }
        }
        req.params = params_from(shared, ctx);
        auto column = parse_compare_column(sort_by);
        if (!column) throw CLI::ValidationError("--sort-by", "unknown column '" + sort_by + "'");
        req.sort_by = *column;
        req.descending = descending;
      }
      emit(shared, render(compare(req), shared.format));
      return 0;
    }

    if (*curve_cmd) {
      CurveRequest req;
      if (!shared.request_file.empty()) {
        RequestContext rc = request_context(shared);
        if (ctx.has_extra) rc.database = &ctx.extra;
        req = decode_curve_request(read_file(shared.request_file), rc);
      } else {
        if (curve_spec.empty()) throw CLI::ValidationError("spec", "a network spec is required");
        std::vector<std::string> ignored;
        req.network = load_network(curve_spec, shared.strict, ignored);
        req.params = params_from(shared, ctx);
        req.include_training = include_training;
        if (!curve_counts.empty()) {
          req.counts = curve_counts;
        } else {
          if (!(range_from >= 1 && range_to >= range_from && range_to < 1.8e19)) {
            throw DomainError("prediction range is empty or out of bounds");
          }
          req.counts = log_spaced_counts(static_cast<std::uint64_t>(range_from),
                                         static_cast<std::uint64_t>(range_to), steps_per_decade);
        }
      }
      const auto report = curve(req);
      if (!plot_data.empty()) {
        std::ofstream out(plot_data, std::ios::binary);
        if (!out) throw DomainError("cannot write '" + plot_data + "'");
        out << render_csv(report);
      }
      emit(shared, render(report, shared.format));
      return 0;
    }

    if (*hardware_list) {
      std::cout << "id                 vendor   architecture  fp32 FLOPs/cycle  peak fp32 [FLOPS]  "
                   "efficiency [FLOPS/W]\n";
      for (const auto& p : builtin_database().profiles()) {
        char line[256];
        auto fp32 = p.flops_per_cycle.find(DataType::fp32);
        std::string peak = "-", eff = "-";
        try {
          char b[32];
          std::snprintf(b, sizeof b, "%.4g", peak_flops(p, DataType::fp32));
          peak = b;
        } catch (const Error&) {
        }
        try {
          char b[32];
          std::snprintf(b, sizeof b, "%.4g", efficiency_flops_per_watt(p, DataType::fp32));
          eff = b;
          if (!p.efficiency_flops_per_watt) eff += " (from tdp)";
        } catch (const Error&) {
        }
        std::snprintf(line, sizeof line, "%-18s %-8s %-13s %16s  %17s  %s\n", p.id.c_str(),
                      p.vendor.c_str(), p.architecture.c_str(),
                      fp32 == p.flops_per_cycle.end() ? "-" : std::to_string(static_cast<int>(fp32->second)).c_str(),
                      peak.c_str(), eff.c_str());
        std::cout << line;
      }
      return 0;
    }
    if (*hardware_show) {
      std::cout << serialize_profiles({std::string(kFormatVersion), {builtin_database().get(hardware_id)}});
      return 0;
    }
    if (*hardware_export) {
      std::cout << serialize_profiles({std::string(kFormatVersion), builtin_profiles()});
      return 0;
    }

    if (*zoo_list) {
      for (const auto& e : model_zoo()) {
        std::cout << e.id << "\n    " << e.provenance << "\n";
      }
      return 0;
    }
    if (*zoo_show) {
      std::cout << serialize_spec(zoo_entry(zoo_id).spec);
      return 0;
    }

    if (*validate_cmd) {
      std::vector<std::string> warnings;
      const auto doc = load_network(validate_spec, validate_strict, warnings);
      const auto cost = network_cost(doc.network);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      for (std::size_t i = 0; i < cost.per_layer.size(); ++i) {
        for (const auto& w : cost.per_layer[i].warnings) {
          std::cerr << "warning: layer " << i << ": " << w << "\n";
        }
      }
      std::cout << "ok: " << doc.network.name << ", " << doc.network.layers.size() << " layers, "
                << cost.total_flops << " FLOPs, " << cost.total_weights << " weights\n";
      return 0;
    }

    if (*serve_cmd) {
      Server server;
      std::cerr << "nncost " << kToolVersion << " listening on http://" << bind << ":" << port
                << "/api/v1\n";
      server.listen(bind, port);
      return 0;
    }
  } catch (const Error& e) {
    if (json_errors) {
      std::cerr << render_json(error_json(e));
    } else {
      std::cerr << "error[" << error_code(e.kind()) << "]: " << e.what() << "\n";
    }
    return exit_code(e.kind());
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
