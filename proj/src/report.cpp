#include "nncost/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "nncost/zoo.hpp"
#include "yaml_decode.hpp"

namespace nncost {

namespace {

using nlohmann::json;

// ---- formatting helpers ----

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

json shape_json(const TensorShape& s) {
  return {{"rows", s.rows}, {"cols", s.cols}, {"channels", s.channels}};
}

json training_json(const TrainingConfig& t) {
  return {{"training_samples", t.training_samples},
          {"epochs", t.epochs},
          {"backward_multiplier", round_sig6(t.backward_multiplier)}};
}

json intensity_json(const CarbonIntensity& c) {
  return {{"grams_co2eq_per_kwh", round_sig6(c.grams_co2eq_per_kwh)},
          {"region_label", c.region_label}};
}

json params_json(const AnalysisParams& p) {
  return {{"hardware", to_json(p.profile)},
          {"dtype", std::string(to_string(p.dtype))},
          {"training", training_json(p.training)},
          {"intensity", intensity_json(p.intensity)}};
}

json curve_json(const std::vector<CurvePoint>& curve) {
  json pts = json::array();
  for (const auto& pt : curve) {
    json j = {{"predictions", pt.predictions}, {"grams_co2eq", round_sig6(pt.grams)}};
    if (!pt.marker.empty()) j["marker"] = pt.marker;
    pts.push_back(std::move(j));
  }
  return pts;
}

// ---- request decoding ----

const ProfileDatabase& database_of(const RequestContext& ctx) {
  return ctx.database ? *ctx.database : builtin_database();
}

YAML::Node load_json_object(std::string_view text) {
  try {
    [[maybe_unused]] const auto parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError("malformed JSON body",
                      detail::offset_location(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  auto root = detail::load_document(text);
  if (!root.IsMap()) throw SchemaError("request body must be a JSON object", SourceLocation{1, 1});
  return root;
}

void collect(std::vector<Diagnostic>& diags, std::vector<std::string>& out) {
  for (const auto& d : diags) out.push_back(to_string(d.location) + ": " + d.message);
  diags.clear();
}

SpecDocument resolve_network(const YAML::Node& node, const std::string& path,
                             const detail::DecodeContext& dctx, const RequestContext& ctx,
                             std::vector<std::string>& warnings) {
  if (!node.IsScalar()) {
    auto doc = detail::decode_spec(node, dctx, path);
    if (dctx.warnings) collect(*dctx.warnings, warnings);
    return doc;
  }
  const auto ref = detail::read_string(node, path);
  if (ref.rfind("zoo:", 0) == 0) {
    try {
      return zoo_entry(ref.substr(4)).spec;
    } catch (const NotFound& e) {
      throw NotFound(path + ": " + e.message(), detail::location_of(node));
    }
  }
  if (ref.rfind("file:", 0) == 0) {
    if (!ctx.allow_files) {
      throw SchemaError(path + ": file references are not accepted here", detail::location_of(node));
    }
    std::filesystem::path file = ref.substr(5);
    if (file.is_relative() && !ctx.base_dir.empty()) file = std::filesystem::path(ctx.base_dir) / file;
    std::vector<Diagnostic> diags;
    auto doc = parse_spec(read_file(file.string()), dctx.options, &diags);
    collect(diags, warnings);
    return doc;
  }
  throw SchemaError(path + ": expected a network document, 'zoo:<id>' or 'file:<path>'",
                    detail::location_of(node));
}

// Reads hardware, overrides, dtype, training, intensity from a request map.
AnalysisParams decode_params(detail::MapReader& m, const detail::DecodeContext& dctx,
                             const RequestContext& ctx, bool training_required) {
  AnalysisParams p;
  const auto hw = m.required("hardware");
  if (hw.IsScalar()) {
    const auto id = detail::read_string(hw, m.path("hardware"));
    const auto* found = database_of(ctx).find(id);
    if (!found) throw NotFound("hardware: unknown hardware id '" + id + "'", detail::location_of(hw));
    p.profile = *found;
  } else {
    p.profile = detail::decode_profile(hw, dctx, m.path("hardware"));
  }
  if (auto n = m.optional("hardware_overrides")) {
    detail::MapReader o(*n, m.path("hardware_overrides"), dctx);
    ProfileOverrides ov;
    if (auto v = o.optional("clock_hz")) ov.clock_hz = detail::read_positive_number(*v, o.path("clock_hz"));
    if (auto v = o.optional("cores")) ov.cores = detail::read_positive(*v, o.path("cores"));
    if (auto v = o.optional("efficiency_flops_per_watt")) {
      ov.efficiency_flops_per_watt =
          detail::read_positive_number(*v, o.path("efficiency_flops_per_watt"));
    }
    o.finish();
    p.profile = apply_overrides(std::move(p.profile), ov);
  }
  if (auto n = m.optional("dtype")) {
    const auto s = detail::read_string(*n, m.path("dtype"));
    auto t = parse_data_type(s);
    if (!t) throw SchemaError("dtype: unknown data type '" + s + "'", detail::location_of(*n));
    p.dtype = *t;
  }
  if (training_required) {
    p.training = detail::decode_training(m.required("training"), dctx, m.path("training"));
  } else if (auto n = m.optional("training")) {
    p.training = detail::decode_training(*n, dctx, m.path("training"));
  }
  if (auto n = m.optional("intensity")) {
    p.intensity = detail::decode_intensity(*n, dctx, m.path("intensity"));
  }
  return p;
}

// The request envelope is always strict; "strict" only governs network documents.
detail::DecodeContext network_context(detail::MapReader& m, std::vector<Diagnostic>& diags) {
  detail::DecodeContext dctx;
  dctx.warnings = &diags;
  if (auto n = m.optional("strict")) dctx.options.strict = detail::read_bool(*n, m.path("strict"));
  return dctx;
}

std::vector<std::uint64_t> read_counts(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw SchemaError(path + ": expected a list", detail::location_of(n));
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < n.size(); ++i) {
    counts.push_back(detail::read_count(n[i], path + "[" + std::to_string(i) + "]"));
  }
  return counts;
}

double sort_key(const CompareRow& r, CompareColumn c) {
  switch (c) {
    case CompareColumn::weights: return static_cast<double>(r.weights);
    case CompareColumn::flops: return static_cast<double>(r.total_flops);
    case CompareColumn::energy: return r.e_training_j;
    case CompareColumn::co2: return r.training_g;
    case CompareColumn::name: return 0.0;
  }
  return 0.0;
}

}  // namespace

double round_sig6(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

// ---- operations ----

AnalysisReport analyze(const AnalysisRequest& request) {
  const auto& p = request.params;
  validate(p.training);
  validate(p.intensity);

  AnalysisReport r;
  r.inputs = request;
  r.warnings = request.input_warnings;
  r.network_cost = network_cost(request.network.network);
  for (std::size_t i = 0; i < r.network_cost.per_layer.size(); ++i) {
    for (const auto& w : r.network_cost.per_layer[i].warnings) {
      r.warnings.push_back("layer " + std::to_string(i) + " (" +
                           std::string(layer_kind(request.network.network.layers[i])) + "): " + w);
    }
  }

  try {
    r.peak_flops = peak_flops(p.profile, p.dtype);
  } catch (const MissingCapability&) {
    r.peak_flops.reset();
  }
  r.efficiency_flops_per_watt = efficiency_flops_per_watt(p.profile, p.dtype);
  if (!p.profile.efficiency_flops_per_watt) {
    r.warnings.push_back("efficiency_flops_per_watt derived as peak_flops / tdp_watts for profile '" +
                         p.profile.id + "'");
  }

  const auto flops = r.network_cost.total_flops;
  r.energy = energy_training(flops, r.efficiency_flops_per_watt, p.training);
  r.carbon.training_g = carbon_footprint(r.energy.e_training_j, p.intensity);
  r.carbon.per_prediction_g = carbon_footprint(r.energy.e_per_prediction_j, p.intensity);
  if (request.prediction_counts) {
    CurveOptions opts{request.curve_includes_training, r.carbon.training_g};
    r.carbon.curve = co2_vs_predictions(flops, r.efficiency_flops_per_watt, p.intensity,
                                        *request.prediction_counts, opts)
                         .curve;
  }
  return r;
}

std::optional<CompareColumn> parse_compare_column(std::string_view s) {
  for (auto c : {CompareColumn::name, CompareColumn::weights, CompareColumn::flops,
                 CompareColumn::energy, CompareColumn::co2}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(CompareColumn c) {
  switch (c) {
    case CompareColumn::name: return "name";
    case CompareColumn::weights: return "weights";
    case CompareColumn::flops: return "flops";
    case CompareColumn::energy: return "energy";
    case CompareColumn::co2: return "co2";
  }
  return "flops";
}

CompareReport compare(const CompareRequest& request) {
  if (request.networks.size() + request.failed_inputs.size() < 2) {
    throw DomainError("compare needs at least 2 networks");
  }
  const auto& p = request.params;
  validate(p.training);
  validate(p.intensity);
  const double eff = efficiency_flops_per_watt(p.profile, p.dtype);

  CompareReport report;
  report.params = p;
  report.sort_by = request.sort_by;
  report.descending = request.descending;
  report.rows = request.failed_inputs;
  if (request.fail_fast && !report.rows.empty()) {
    throw Error(ErrorKind::schema, *report.rows.front().error_message);
  }

  for (const auto& doc : request.networks) {
    CompareRow row;
    row.name = doc.network.name;
    try {
      const auto cost = network_cost(doc.network);
      row.weights = cost.total_weights;
      row.total_flops = cost.total_flops;
      row.e_training_j = energy_training(cost.total_flops, eff, p.training).e_training_j;
      row.training_g = carbon_footprint(row.e_training_j, p.intensity);
    } catch (const Error& e) {
      if (request.fail_fast) throw;
      row.error_code = std::string(error_code(e.kind()));
      row.error_message = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  const auto column = request.sort_by;
  const bool desc = request.descending;
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [column, desc](const CompareRow& a, const CompareRow& b) {
                     if (a.error_code.has_value() != b.error_code.has_value()) {
                       return !a.error_code.has_value();
                     }
                     if (column != CompareColumn::name && !a.error_code) {
                       const double ka = sort_key(a, column), kb = sort_key(b, column);
                       if (ka != kb) return desc ? ka > kb : ka < kb;
                       return a.name < b.name;
                     }
                     if (a.name != b.name) return desc && column == CompareColumn::name
                                                      ? a.name > b.name
                                                      : a.name < b.name;
                     return false;
                   });
  return report;
}

CurveReport curve(const CurveRequest& request) {
  const auto& p = request.params;
  validate(p.intensity);
  CurveReport r;
  r.inputs = request;
  r.total_flops = network_cost(request.network.network).total_flops;
  r.efficiency_flops_per_watt = efficiency_flops_per_watt(p.profile, p.dtype);
  CurveOptions opts;
  opts.include_training = request.include_training;
  if (request.include_training) {
    const auto e = energy_training(r.total_flops, r.efficiency_flops_per_watt, p.training);
    opts.training_g = carbon_footprint(e.e_training_j, p.intensity);
  }
  r.carbon = co2_vs_predictions(r.total_flops, r.efficiency_flops_per_watt, p.intensity,
                                request.counts, opts);
  return r;
}

// ---- decoding ----

AnalysisRequest decode_analysis_request(std::string_view text, const RequestContext& ctx) {
  const auto root = load_json_object(text);
  detail::DecodeContext envelope;
  detail::MapReader m(root, "", envelope);
  std::vector<Diagnostic> diags;
  const auto dctx = network_context(m, diags);

  AnalysisRequest req;
  req.network = resolve_network(m.required("network"), "network", dctx, ctx, req.input_warnings);
  req.params = decode_params(m, envelope, ctx, true);
  if (auto n = m.optional("prediction_counts")) {
    req.prediction_counts = read_counts(*n, m.path("prediction_counts"));
  }
  if (auto n = m.optional("curve_includes_training")) {
    req.curve_includes_training = detail::read_bool(*n, m.path("curve_includes_training"));
  }
  m.finish();
  return req;
}

CompareRequest decode_compare_request(std::string_view text, const RequestContext& ctx) {
  const auto root = load_json_object(text);
  detail::DecodeContext envelope;
  detail::MapReader m(root, "", envelope);
  std::vector<Diagnostic> diags;
  const auto dctx = network_context(m, diags);

  CompareRequest req;
  if (auto n = m.optional("fail_fast")) req.fail_fast = detail::read_bool(*n, m.path("fail_fast"));
  const auto list = m.required("networks");
  if (!list.IsSequence()) {
    throw SchemaError("networks: expected a list", detail::location_of(list));
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "networks[" + std::to_string(i) + "]";
    std::vector<std::string> ignored;
    try {
      req.networks.push_back(resolve_network(list[i], path, dctx, ctx, ignored));
    } catch (const Error& e) {
      if (req.fail_fast) throw;
      CompareRow row;
      row.name = path;
      row.error_code = std::string(error_code(e.kind()));
      row.error_message = e.what();
      req.failed_inputs.push_back(std::move(row));
    }
  }
  req.params = decode_params(m, envelope, ctx, true);
  if (auto n = m.optional("sort_by")) {
    const auto s = detail::read_string(*n, m.path("sort_by"));
    auto c = parse_compare_column(s);
    if (!c) {
      throw SchemaError("sort_by: expected name, weights, flops, energy or co2, got '" + s + "'",
                        detail::location_of(*n));
    }
    req.sort_by = *c;
  }
  if (auto n = m.optional("descending")) req.descending = detail::read_bool(*n, m.path("descending"));
  m.finish();
  return req;
}

CurveRequest decode_curve_request(std::string_view text, const RequestContext& ctx) {
  const auto root = load_json_object(text);
  detail::DecodeContext envelope;
  detail::MapReader m(root, "", envelope);
  std::vector<Diagnostic> diags;
  const auto dctx = network_context(m, diags);

  CurveRequest req;
  std::vector<std::string> ignored;
  req.network = resolve_network(m.required("network"), "network", dctx, ctx, ignored);
  if (auto n = m.optional("include_training")) {
    req.include_training = detail::read_bool(*n, m.path("include_training"));
  }
  req.params = decode_params(m, envelope, ctx, req.include_training);

  const auto counts = m.optional("prediction_counts");
  const auto range = m.optional("range");
  if (counts && range) {
    throw SchemaError("give either prediction_counts or range, not both", detail::location_of(*range));
  }
  if (counts) {
    req.counts = read_counts(*counts, m.path("prediction_counts"));
  } else if (range) {
    detail::MapReader r(*range, m.path("range"), envelope);
    const auto from = detail::read_count(r.required("from"), r.path("from"));
    const auto to = detail::read_count(r.required("to"), r.path("to"));
    unsigned steps = 1;
    if (auto s = r.optional("steps_per_decade")) {
      steps = static_cast<unsigned>(detail::read_positive(*s, r.path("steps_per_decade")));
    }
    r.finish();
    req.counts = log_spaced_counts(from, to, steps);
  } else {
    throw SchemaError("prediction_counts or range is required", detail::location_of(root));
  }
  m.finish();
  return req;
}

// ---- JSON ----

nlohmann::json to_json(const SpecDocument& doc) {
  json layers = json::array();
  for (const auto& layer : doc.network.layers) {
    json l = {{"type", std::string(layer_kind(layer))}};
    if (const auto* d = std::get_if<Dense>(&layer)) {
      l["output_size"] = d->output_size;
      l["use_bias"] = d->use_bias;
      l["activation"] = std::string(to_string(d->activation));
    } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
      l["kernel_rows"] = c->kernel_rows;
      l["kernel_cols"] = c->kernel_cols;
      l["stride_rows"] = c->stride_rows;
      l["stride_cols"] = c->stride_cols;
      l["pad_rows"] = c->pad_rows;
      l["pad_cols"] = c->pad_cols;
      l["num_filters"] = c->num_filters;
      l["use_bias"] = c->use_bias;
      l["activation"] = std::string(to_string(c->activation));
    } else if (const auto* p = std::get_if<Pool2D>(&layer)) {
      l["kernel_rows"] = p->kernel_rows;
      l["kernel_cols"] = p->kernel_cols;
      l["stride_rows"] = p->stride_rows;
      l["stride_cols"] = p->stride_cols;
    }
    layers.push_back(std::move(l));
  }
  json j = {{"format_version", doc.format_version},
            {"network",
             {{"name", doc.network.name},
              {"input_shape", shape_json(doc.network.input_shape)},
              {"layers", std::move(layers)}}}};
  json meta = json::object();
  if (doc.metadata.author) meta["author"] = *doc.metadata.author;
  if (doc.metadata.source) meta["source"] = *doc.metadata.source;
  if (doc.metadata.citation) meta["citation"] = *doc.metadata.citation;
  if (!meta.empty()) j["metadata"] = std::move(meta);
  return j;
}

nlohmann::json to_json(const HardwareProfile& p) {
  json j = {{"id", p.id}, {"vendor", p.vendor}, {"architecture", p.architecture}, {"notes", p.notes}};
  if (!p.flops_per_cycle.empty()) {
    json f = json::object();
    for (const auto& [t, v] : p.flops_per_cycle) f[std::string(to_string(t))] = round_sig6(v);
    j["flops_per_cycle"] = std::move(f);
  }
  if (p.clock_hz) j["clock_hz"] = round_sig6(*p.clock_hz);
  if (p.cores) j["cores"] = *p.cores;
  if (p.efficiency_flops_per_watt) {
    j["efficiency_flops_per_watt"] = round_sig6(*p.efficiency_flops_per_watt);
  }
  if (p.tdp_watts) j["tdp_watts"] = round_sig6(*p.tdp_watts);
  return j;
}

nlohmann::json to_json(const AnalysisReport& r) {
  json layers = json::array();
  const auto& spec_layers = r.inputs.network.network.layers;
  for (std::size_t i = 0; i < r.network_cost.per_layer.size(); ++i) {
    const auto& c = r.network_cost.per_layer[i];
    layers.push_back({{"index", i},
                      {"type", std::string(layer_kind(spec_layers[i]))},
                      {"flops", c.flops},
                      {"macs", c.macs},
                      {"weights", c.weights},
                      {"output_shape", shape_json(c.output_shape)},
                      {"warnings", c.warnings}});
  }

  json inputs = params_json(r.inputs.params);
  inputs["network"] = to_json(r.inputs.network);
  inputs["efficiency_flops_per_watt"] = round_sig6(r.efficiency_flops_per_watt);
  inputs["peak_flops"] = r.peak_flops ? json(round_sig6(*r.peak_flops)) : json(nullptr);
  if (r.inputs.prediction_counts) {
    inputs["prediction_counts"] = *r.inputs.prediction_counts;
    inputs["curve_includes_training"] = r.inputs.curve_includes_training;
  }

  json carbon = {{"training_g", round_sig6(r.carbon.training_g)},
                 {"per_prediction_g", round_sig6(r.carbon.per_prediction_g)}};
  if (r.carbon.curve) carbon["curve"] = curve_json(*r.carbon.curve);

  return {
      {"tool", {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}}},
      {"network_cost",
       {{"per_layer", std::move(layers)},
        {"total_flops", r.network_cost.total_flops},
        {"total_macs", r.network_cost.total_macs},
        {"total_weights", r.network_cost.total_weights},
        {"mflops", round_sig6(r.network_cost.mflops())}}},
      {"energy",
       {{"e_forward_j", round_sig6(r.energy.e_forward_j)},
        {"e_backward_j", round_sig6(r.energy.e_backward_j)},
        {"e_training_j", round_sig6(r.energy.e_training_j)},
        {"e_training_kwh", round_sig6(r.energy.e_training_j / kJoulesPerKwh)},
        {"e_per_prediction_j", round_sig6(r.energy.e_per_prediction_j)}}},
      {"carbon", std::move(carbon)},
      {"inputs", std::move(inputs)},
      {"warnings", r.warnings},
  };
}

nlohmann::json to_json(const CompareReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j = {{"name", row.name}};
    if (row.error_code) {
      j["error"] = {{"code", *row.error_code}, {"message", *row.error_message}};
    } else {
      j["weights"] = row.weights;
      j["total_flops"] = row.total_flops;
      j["mflops"] = round_sig6(static_cast<double>(row.total_flops) / 1e6);
      j["e_training_j"] = round_sig6(row.e_training_j);
      j["training_g"] = round_sig6(row.training_g);
    }
    rows.push_back(std::move(j));
  }
  return {{"tool", {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}}},
          {"inputs", params_json(r.params)},
          {"sort_by", std::string(to_string(r.sort_by))},
          {"descending", r.descending},
          {"rows", std::move(rows)}};
}

nlohmann::json to_json(const CurveReport& r) {
  json inputs = params_json(r.inputs.params);
  inputs["network"] = to_json(r.inputs.network);
  inputs["efficiency_flops_per_watt"] = round_sig6(r.efficiency_flops_per_watt);
  inputs["include_training"] = r.inputs.include_training;
  if (!r.inputs.include_training) inputs.erase("training");
  return {{"tool", {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}}},
          {"inputs", std::move(inputs)},
          {"total_flops", r.total_flops},
          {"per_prediction_g", round_sig6(r.carbon.per_prediction_g)},
          {"training_g", round_sig6(r.carbon.training_g)},
          {"curve", curve_json(*r.carbon.curve)}};
}

nlohmann::json error_json(const Error& e) {
  json j = {{"code", std::string(error_code(e.kind()))}, {"message", e.message()}};
  if (e.location()) j["location"] = {{"line", e.location()->line}, {"column", e.location()->column}};
  return j;
}

std::string render_json(const nlohmann::json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

// ---- text ----

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string render_table(const AnalysisReport& r) {
  std::ostringstream os;
  const auto& net = r.inputs.network.network;
  os << "network: " << net.name << "  input " << to_string(net.input_shape) << "\n\n";
  os << pad_right("#", 4) << pad_right("type", 9) << pad_right("output", 16) << pad_left("flops", 16)
     << pad_left("macs", 16) << pad_left("weights", 14) << "\n";
  for (std::size_t i = 0; i < r.network_cost.per_layer.size(); ++i) {
    const auto& c = r.network_cost.per_layer[i];
    os << pad_right(std::to_string(i), 4) << pad_right(std::string(layer_kind(net.layers[i])), 9)
       << pad_right(to_string(c.output_shape), 16) << pad_left(std::to_string(c.flops), 16)
       << pad_left(std::to_string(c.macs), 16) << pad_left(std::to_string(c.weights), 14) << "\n";
  }
  os << pad_right("", 29) << pad_left(std::to_string(r.network_cost.total_flops), 16)
     << pad_left(std::to_string(r.network_cost.total_macs), 16)
     << pad_left(std::to_string(r.network_cost.total_weights), 14) << "\n\n";

  const auto& p = r.inputs.params;
  os << "M_FLOPs:              " << fmt_g(r.network_cost.mflops()) << " MFLOPs\n";
  os << "hardware:             " << p.profile.id << " (" << to_string(p.dtype) << ")\n";
  if (r.peak_flops) os << "peak:                 " << fmt_g(*r.peak_flops) << " FLOPS\n";
  os << "efficiency:           " << fmt_g(r.efficiency_flops_per_watt) << " FLOPS/W\n";
  os << "training:             " << p.training.training_samples << " samples x "
     << p.training.epochs << " epochs, backward x" << fmt_g(p.training.backward_multiplier) << "\n";
  os << "E_forward:            " << fmt_g(r.energy.e_forward_j) << " J\n";
  os << "E_backward:           " << fmt_g(r.energy.e_backward_j) << " J\n";
  os << "E_training:           " << fmt_g(r.energy.e_training_j) << " J ("
     << fmt_g(r.energy.e_training_j / kJoulesPerKwh) << " kWh)\n";
  os << "E_prediction:         " << fmt_g(r.energy.e_per_prediction_j) << " J per prediction\n";
  os << "carbon intensity:     " << fmt_g(p.intensity.grams_co2eq_per_kwh) << " g CO2eq/kWh ("
     << p.intensity.region_label << ")\n";
  os << "training footprint:   " << fmt_g(r.carbon.training_g) << " g CO2eq\n";
  os << "prediction footprint: " << fmt_g(r.carbon.per_prediction_g) << " g CO2eq per prediction\n";
  if (r.carbon.curve) {
    os << "\n" << pad_left("predictions", 16) << pad_left("g CO2eq", 16) << "\n";
    for (const auto& pt : *r.carbon.curve) {
      os << pad_left(std::to_string(pt.predictions), 16) << pad_left(fmt_g(pt.grams), 16);
      if (!pt.marker.empty()) os << "  <- " << pt.marker;
      os << "\n";
    }
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string render_csv(const AnalysisReport& r) {
  std::ostringstream os;
  os << "index,type,output_rows,output_cols,output_channels,flops,macs,weights,warnings\n";
  const auto& layers = r.inputs.network.network.layers;
  for (std::size_t i = 0; i < r.network_cost.per_layer.size(); ++i) {
    const auto& c = r.network_cost.per_layer[i];
    std::string warnings;
    for (const auto& w : c.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    os << i << ',' << layer_kind(layers[i]) << ',' << c.output_shape.rows << ','
       << c.output_shape.cols << ',' << c.output_shape.channels << ',' << c.flops << ',' << c.macs
       << ',' << c.weights << ',' << csv_field(warnings) << "\n";
  }
  os << "total,,,,," << r.network_cost.total_flops << ',' << r.network_cost.total_macs << ','
     << r.network_cost.total_weights << ",\n";
  return os.str();
}

std::string render_table(const CompareReport& r) {
  std::size_t name_width = 8;
  for (const auto& row : r.rows) name_width = std::max(name_width, row.name.size() + 2);
  std::ostringstream os;
  os << pad_right("name", name_width) << pad_left("weights", 14) << pad_left("M_FLOPs", 14)
     << pad_left("E_training [J]", 18) << pad_left("CO2 [g]", 14) << "\n";
  for (const auto& row : r.rows) {
    os << pad_right(row.name, name_width);
    if (row.error_code) {
      os << "  error[" << *row.error_code << "]: " << *row.error_message << "\n";
      continue;
    }
    os << pad_left(std::to_string(row.weights), 14)
       << pad_left(fmt_g(static_cast<double>(row.total_flops) / 1e6), 14)
       << pad_left(fmt_g(row.e_training_j), 18) << pad_left(fmt_g(row.training_g), 14) << "\n";
  }
  return os.str();
}

std::string render_csv(const CompareReport& r) {
  std::ostringstream os;
  os << "name,weights,total_flops,mflops,e_training_j,training_g,error_code,error_message\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.name) << ',';
    if (row.error_code) {
      os << ",,,,," << csv_field(*row.error_code) << ',' << csv_field(*row.error_message) << "\n";
      continue;
    }
    os << row.weights << ',' << row.total_flops << ','
       << fmt_g(static_cast<double>(row.total_flops) / 1e6) << ',' << fmt_g(row.e_training_j)
       << ',' << fmt_g(row.training_g) << ",,\n";
  }
  return os.str();
}

std::string render_table(const CurveReport& r) {
  std::ostringstream os;
  os << "network: " << r.inputs.network.network.name << "  (" << r.total_flops << " FLOPs, "
     << r.inputs.params.profile.id << ", " << fmt_g(r.inputs.params.intensity.grams_co2eq_per_kwh)
     << " g CO2eq/kWh)\n";
  os << pad_left("predictions", 16) << pad_left("g CO2eq", 16) << "\n";
  for (const auto& pt : *r.carbon.curve) {
    os << pad_left(std::to_string(pt.predictions), 16) << pad_left(fmt_g(pt.grams), 16);
    if (!pt.marker.empty()) os << "  <- " << pt.marker;
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const CurveReport& r) {
  std::ostringstream os;
  os << "predictions,grams_co2eq,marker\n";
  for (const auto& pt : *r.carbon.curve) {
    os << pt.predictions << ',' << fmt_g(pt.grams) << ',' << csv_field(pt.marker) << "\n";
  }
  return os.str();
}

}  // namespace nncost
