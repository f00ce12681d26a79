#include "nncost/spec_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "yaml_decode.hpp"

namespace nncost {

namespace detail {

namespace {

// Offset of the first byte that breaks UTF-8, or npos.
std::size_t invalid_utf8_offset(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

bool is_quoted(const YAML::Node& n) { return n.Tag() == "!"; }

const std::string& scalar_text(const YAML::Node& n, const std::string& path,
                               std::string_view expected) {
  if (!n.IsScalar() || is_quoted(n)) {
    throw SchemaError(path + ": expected " + std::string(expected), location_of(n));
  }
  return n.Scalar();
}

template <class Map, class Key>
bool contains(const Map& m, const Key& k) {
  return m.find(k) != m.end();
}

void emit_number(YAML::Emitter& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out << std::string(buf, res.ptr);
}

void emit_string(YAML::Emitter& out, const std::string& s) { out << YAML::DoubleQuoted << s; }

}  // namespace

SourceLocation offset_location(std::string_view s, std::size_t offset) {
  SourceLocation loc{1, 1};
  for (std::size_t i = 0; i < offset && i < s.size(); ++i) {
    if (s[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

SourceLocation location_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.is_null()) return {};
  return {static_cast<std::size_t>(mark.line) + 1, static_cast<std::size_t>(mark.column) + 1};
}

YAML::Node load_document(std::string_view text) {
  if (const auto bad = invalid_utf8_offset(text); bad != std::string_view::npos) {
    throw SyntaxError("input is not valid UTF-8", offset_location(text, bad));
  }
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    normalized.push_back(text[i]);
  }
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(normalized);
  } catch (const YAML::ParserException& e) {
    throw SyntaxError(e.msg, SourceLocation{static_cast<std::size_t>(e.mark.line) + 1,
                                            static_cast<std::size_t>(e.mark.column) + 1});
  } catch (const YAML::Exception& e) {
    throw SyntaxError(e.msg, SourceLocation{1, 1});
  }
  if (docs.empty() || docs.front().IsNull()) throw SyntaxError("empty document", SourceLocation{1, 1});
  if (docs.size() > 1) {
    throw SyntaxError("expected a single document", location_of(docs[1]));
  }
  return docs.front();
}

MapReader::MapReader(const YAML::Node& node, std::string path, const DecodeContext& ctx)
    : node_(node), path_(std::move(path)), ctx_(ctx) {
  if (!node_.IsMap()) {
    throw SchemaError((path_.empty() ? std::string("document") : path_) + ": expected a mapping",
                      location_of(node_));
  }
  for (auto it = node_.begin(); it != node_.end(); ++it) {
    if (!it->first.IsScalar()) {
      throw SchemaError(join(path_, "<key>") + ": keys must be strings", location_of(it->first));
    }
    const std::string key = it->first.Scalar();
    if (!entries_.emplace(key, std::make_pair(it->first, it->second)).second) {
      throw SchemaError(join(path_, key) + ": duplicate key", location_of(it->first));
    }
  }
}

bool MapReader::has(std::string_view key) const { return contains(entries_, key); }

std::string MapReader::path(std::string_view key) const { return join(path_, key); }

YAML::Node MapReader::required(std::string_view key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw SchemaError(path(key) + ": missing required field", location_of(node_));
  }
  consumed_.insert(std::string(key));
  return it->second.second;
}

std::optional<YAML::Node> MapReader::optional(std::string_view key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  consumed_.insert(std::string(key));
  return it->second.second;
}

void MapReader::finish() const {
  for (const auto& [key, nodes] : entries_) {
    if (contains(consumed_, key)) continue;
    const std::string msg = path(key) + ": unknown field";
    if (ctx_.options.strict) throw SchemaError(msg, location_of(nodes.first));
    if (ctx_.warnings) ctx_.warnings->push_back({location_of(nodes.first), msg});
  }
}

std::uint64_t read_uint(const YAML::Node& n, const std::string& path) {
  const auto& s = scalar_text(n, path, "a non-negative integer");
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec == std::errc::result_out_of_range) {
    throw SchemaError(path + ": integer out of 64-bit range", location_of(n));
  }
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw SchemaError(path + ": expected a non-negative integer, got '" + s + "'", location_of(n));
  }
  return v;
}

std::uint64_t read_count(const YAML::Node& n, const std::string& path) {
  const auto& s = scalar_text(n, path, "a non-negative integer");
  if (s.find_first_of(".eE") == std::string::npos) return read_uint(n, path);
  const double d = read_number(n, path);
  if (d < 0 || d != std::floor(d) || d >= 18446744073709551616.0) {
    throw SchemaError(path + ": expected a non-negative integer, got '" + s + "'", location_of(n));
  }
  return static_cast<std::uint64_t>(d);
}

double read_number(const YAML::Node& n, const std::string& path) {
  const auto& s = scalar_text(n, path, "a number");
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw SchemaError(path + ": expected a finite number, got '" + s + "'", location_of(n));
  }
  return v;
}

bool read_bool(const YAML::Node& n, const std::string& path) {
  const auto& s = scalar_text(n, path, "true or false");
  if (s == "true") return true;
  if (s == "false") return false;
  throw SchemaError(path + ": expected true or false, got '" + s + "'", location_of(n));
}

std::string read_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw SchemaError(path + ": expected a string", location_of(n));
  if (!is_quoted(n) && (n.Scalar() == "null" || n.Scalar() == "~")) {
    throw SchemaError(path + ": expected a string", location_of(n));
  }
  return n.Scalar();
}

std::uint64_t read_positive(const YAML::Node& n, const std::string& path) {
  const auto v = read_uint(n, path);
  if (v < 1) throw ValidationError(path + " must be >= 1", location_of(n));
  return v;
}

double read_positive_number(const YAML::Node& n, const std::string& path) {
  const auto v = read_number(n, path);
  if (!(v > 0)) throw ValidationError(path + " must be > 0", location_of(n));
  return v;
}

namespace {

Activation read_activation(const YAML::Node& n, const std::string& path) {
  const auto s = read_string(n, path);
  if (auto a = parse_activation(s)) return *a;
  throw SchemaError(path + ": unknown activation '" + s + "' (expected none, relu, leaky_relu)",
                    location_of(n));
}

LayerSpec decode_layer(const YAML::Node& node, const DecodeContext& ctx, const std::string& path) {
  MapReader m(node, path, ctx);
  const auto type_node = m.required("type");
  const auto type = read_string(type_node, m.path("type"));

  auto positive = [&](std::string_view key) { return read_positive(m.required(key), m.path(key)); };
  auto padding = [&](std::string_view key) -> std::uint64_t {
    auto n = m.optional(key);
    return n ? read_uint(*n, m.path(key)) : 0;
  };
  auto bias = [&] {
    auto n = m.optional("use_bias");
    return n ? read_bool(*n, m.path("use_bias")) : true;
  };
  auto activation = [&] {
    auto n = m.optional("activation");
    return n ? read_activation(*n, m.path("activation")) : Activation::none;
  };

  LayerSpec layer;
  if (type == "dense") {
    Dense d;
    d.output_size = positive("output_size");
    d.use_bias = bias();
    d.activation = activation();
    layer = d;
  } else if (type == "conv2d") {
    Conv2D c;
    c.kernel_rows = positive("kernel_rows");
    c.kernel_cols = positive("kernel_cols");
    c.stride_rows = positive("stride_rows");
    c.stride_cols = positive("stride_cols");
    c.pad_rows = padding("pad_rows");
    c.pad_cols = padding("pad_cols");
    c.num_filters = positive("num_filters");
    c.use_bias = bias();
    c.activation = activation();
    layer = c;
  } else if (type == "pool2d") {
    Pool2D p;
    p.kernel_rows = positive("kernel_rows");
    p.kernel_cols = positive("kernel_cols");
    p.stride_rows = positive("stride_rows");
    p.stride_cols = positive("stride_cols");
    layer = p;
  } else if (type == "flatten") {
    layer = Flatten{};
  } else {
    throw SchemaError(m.path("type") + ": unknown layer type '" + type +
                          "' (expected dense, conv2d, pool2d, flatten)",
                      location_of(type_node));
  }
  m.finish();
  return layer;
}

NetworkSpec decode_network(const YAML::Node& node, const DecodeContext& ctx,
                           const std::string& path) {
  MapReader m(node, path, ctx);
  NetworkSpec net;
  net.name = read_string(m.required("name"), m.path("name"));

  {
    MapReader shape(m.required("input_shape"), m.path("input_shape"), ctx);
    net.input_shape.rows = read_positive(shape.required("rows"), shape.path("rows"));
    net.input_shape.cols = read_positive(shape.required("cols"), shape.path("cols"));
    net.input_shape.channels = read_positive(shape.required("channels"), shape.path("channels"));
    shape.finish();
  }

  const auto layers = m.required("layers");
  if (!layers.IsSequence()) {
    throw SchemaError(m.path("layers") + ": expected a list", location_of(layers));
  }
  if (layers.size() == 0) {
    throw ValidationError(m.path("layers") + " must not be empty", location_of(layers));
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    net.layers.push_back(
        decode_layer(layers[i], ctx, m.path("layers") + "[" + std::to_string(i) + "]"));
  }
  m.finish();

  try {
    validate(net);
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), location_of(node));
  }
  return net;
}

void read_version(MapReader& m, std::string& out) {
  const auto n = m.required("format_version");
  out = read_string(n, m.path("format_version"));
  if (out != kFormatVersion) {
    throw SchemaError("unsupported format_version '" + out + "' (expected " +
                          std::string(kFormatVersion) + ")",
                      location_of(n));
  }
}

}  // namespace

SpecDocument decode_spec(const YAML::Node& root, const DecodeContext& ctx,
                         const std::string& path) {
  MapReader m(root, path, ctx);
  SpecDocument doc;
  read_version(m, doc.format_version);
  doc.network = decode_network(m.required("network"), ctx, m.path("network"));
  if (auto meta = m.optional("metadata")) {
    MapReader mm(*meta, m.path("metadata"), ctx);
    for (auto* field : {"author", "source", "citation"}) {
      if (auto n = mm.optional(field)) {
        auto value = read_string(*n, mm.path(field));
        if (std::string_view(field) == "author") doc.metadata.author = value;
        else if (std::string_view(field) == "source") doc.metadata.source = value;
        else doc.metadata.citation = value;
      }
    }
    mm.finish();
  }
  m.finish();
  return doc;
}

HardwareProfile decode_profile(const YAML::Node& node, const DecodeContext& ctx,
                               const std::string& path) {
  MapReader m(node, path, ctx);
  HardwareProfile p;
  p.id = read_string(m.required("id"), m.path("id"));
  if (auto n = m.optional("vendor")) p.vendor = read_string(*n, m.path("vendor"));
  if (auto n = m.optional("architecture")) p.architecture = read_string(*n, m.path("architecture"));
  if (auto n = m.optional("flops_per_cycle")) {
    // Unknown data types are rejected in lenient mode too.
    DecodeContext strict = ctx;
    strict.options.strict = true;
    MapReader f(*n, m.path("flops_per_cycle"), strict);
    for (auto it = n->begin(); it != n->end(); ++it) {
      const auto key = it->first.Scalar();
      const auto dtype = parse_data_type(key);
      if (!dtype) {
        throw SchemaError(f.path(key) + ": unknown data type (expected fp64, fp32, fp16, bf16, "
                                        "int8, int1)",
                          location_of(it->first));
      }
      p.flops_per_cycle[*dtype] = read_positive_number(f.required(key), f.path(key));
    }
    f.finish();
  }
  if (auto n = m.optional("clock_hz")) p.clock_hz = read_positive_number(*n, m.path("clock_hz"));
  if (auto n = m.optional("cores")) p.cores = read_positive(*n, m.path("cores"));
  if (auto n = m.optional("efficiency_flops_per_watt")) {
    p.efficiency_flops_per_watt = read_positive_number(*n, m.path("efficiency_flops_per_watt"));
  }
  if (auto n = m.optional("tdp_watts")) p.tdp_watts = read_positive_number(*n, m.path("tdp_watts"));
  if (auto n = m.optional("notes")) p.notes = read_string(*n, m.path("notes"));
  m.finish();
  try {
    validate(p);
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), location_of(node));
  }
  return p;
}

ProfileDocument decode_profiles(const YAML::Node& root, const DecodeContext& ctx) {
  MapReader m(root, "", ctx);
  ProfileDocument doc;
  read_version(m, doc.format_version);
  const auto list = m.required("profiles");
  if (!list.IsSequence()) throw SchemaError("profiles: expected a list", location_of(list));
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto p = decode_profile(list[i], ctx, "profiles[" + std::to_string(i) + "]");
    if (!ids.insert(p.id).second) {
      throw ValidationError("duplicate profile id '" + p.id + "'", location_of(list[i]));
    }
    doc.profiles.push_back(std::move(p));
  }
  m.finish();
  return doc;
}

TrainingConfig decode_training(const YAML::Node& node, const DecodeContext& ctx,
                               const std::string& path) {
  MapReader m(node, path, ctx);
  TrainingConfig cfg;
  cfg.training_samples = read_positive(m.required("training_samples"), m.path("training_samples"));
  cfg.epochs = read_positive(m.required("epochs"), m.path("epochs"));
  if (auto n = m.optional("backward_multiplier")) {
    cfg.backward_multiplier = read_number(*n, m.path("backward_multiplier"));
    if (cfg.backward_multiplier < 0) {
      throw ValidationError(m.path("backward_multiplier") + " must be >= 0", location_of(*n));
    }
  }
  m.finish();
  return cfg;
}

CarbonIntensity decode_intensity(const YAML::Node& node, const DecodeContext& ctx,
                                 const std::string& path) {
  MapReader m(node, path, ctx);
  CarbonIntensity ci;
  ci.grams_co2eq_per_kwh =
      read_positive_number(m.required("grams_co2eq_per_kwh"), m.path("grams_co2eq_per_kwh"));
  if (auto n = m.optional("region_label")) ci.region_label = read_string(*n, m.path("region_label"));
  m.finish();
  return ci;
}

}  // namespace detail

namespace {

void emit_layer(YAML::Emitter& out, const LayerSpec& layer) {
  out << YAML::BeginMap;
  out << YAML::Key << "type" << YAML::Value << std::string(layer_kind(layer));
  if (const auto* d = std::get_if<Dense>(&layer)) {
    out << YAML::Key << "output_size" << YAML::Value << d->output_size;
    out << YAML::Key << "use_bias" << YAML::Value << d->use_bias;
    out << YAML::Key << "activation" << YAML::Value << std::string(to_string(d->activation));
  } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
    out << YAML::Key << "kernel_rows" << YAML::Value << c->kernel_rows;
    out << YAML::Key << "kernel_cols" << YAML::Value << c->kernel_cols;
    out << YAML::Key << "stride_rows" << YAML::Value << c->stride_rows;
    out << YAML::Key << "stride_cols" << YAML::Value << c->stride_cols;
    out << YAML::Key << "pad_rows" << YAML::Value << c->pad_rows;
    out << YAML::Key << "pad_cols" << YAML::Value << c->pad_cols;
    out << YAML::Key << "num_filters" << YAML::Value << c->num_filters;
    out << YAML::Key << "use_bias" << YAML::Value << c->use_bias;
    out << YAML::Key << "activation" << YAML::Value << std::string(to_string(c->activation));
  } else if (const auto* p = std::get_if<Pool2D>(&layer)) {
    out << YAML::Key << "kernel_rows" << YAML::Value << p->kernel_rows;
    out << YAML::Key << "kernel_cols" << YAML::Value << p->kernel_cols;
    out << YAML::Key << "stride_rows" << YAML::Value << p->stride_rows;
    out << YAML::Key << "stride_cols" << YAML::Value << p->stride_cols;
  }
  out << YAML::EndMap;
}

void emit_optional_string(YAML::Emitter& out, const char* key, const std::optional<std::string>& v) {
  if (!v) return;
  out << YAML::Key << key << YAML::Value;
  detail::emit_string(out, *v);
}

std::string finish(YAML::Emitter& out) {
  if (!out.good()) throw Error(ErrorKind::schema, "serialization failed: " + out.GetLastError());
  std::string s = out.c_str();
  s.push_back('\n');
  return s;
}

}  // namespace

SpecDocument parse_spec(std::string_view text, const ParseOptions& options,
                        std::vector<Diagnostic>* warnings) {
  const auto root = detail::load_document(text);
  return detail::decode_spec(root, detail::DecodeContext{options, warnings});
}

std::string serialize_spec(const SpecDocument& doc) {
  YAML::Emitter out;
  out.SetBoolFormat(YAML::TrueFalseBool);
  out << YAML::BeginMap;
  out << YAML::Key << "format_version" << YAML::Value;
  detail::emit_string(out, doc.format_version);

  out << YAML::Key << "network" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value;
  detail::emit_string(out, doc.network.name);
  const auto& s = doc.network.input_shape;
  out << YAML::Key << "input_shape" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "rows" << YAML::Value << s.rows;
  out << YAML::Key << "cols" << YAML::Value << s.cols;
  out << YAML::Key << "channels" << YAML::Value << s.channels;
  out << YAML::EndMap;
  out << YAML::Key << "layers" << YAML::Value << YAML::BeginSeq;
  for (const auto& layer : doc.network.layers) emit_layer(out, layer);
  out << YAML::EndSeq;
  out << YAML::EndMap;

  const auto& md = doc.metadata;
  if (md.author || md.source || md.citation) {
    out << YAML::Key << "metadata" << YAML::Value << YAML::BeginMap;
    emit_optional_string(out, "author", md.author);
    emit_optional_string(out, "source", md.source);
    emit_optional_string(out, "citation", md.citation);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return finish(out);
}

ProfileDocument parse_profiles(std::string_view text, const ParseOptions& options,
                               std::vector<Diagnostic>* warnings) {
  const auto root = detail::load_document(text);
  return detail::decode_profiles(root, detail::DecodeContext{options, warnings});
}

std::string serialize_profiles(const ProfileDocument& doc) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "format_version" << YAML::Value;
  detail::emit_string(out, doc.format_version);
  out << YAML::Key << "profiles" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : doc.profiles) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    detail::emit_string(out, p.id);
    out << YAML::Key << "vendor" << YAML::Value;
    detail::emit_string(out, p.vendor);
    out << YAML::Key << "architecture" << YAML::Value;
    detail::emit_string(out, p.architecture);
    if (!p.flops_per_cycle.empty()) {
      out << YAML::Key << "flops_per_cycle" << YAML::Value << YAML::Flow << YAML::BeginMap;
      for (const auto& [dtype, v] : p.flops_per_cycle) {
        out << YAML::Key << std::string(to_string(dtype)) << YAML::Value;
        detail::emit_number(out, v);
      }
      out << YAML::EndMap;
    }
    auto number = [&](const char* key, const std::optional<double>& v) {
      if (!v) return;
      out << YAML::Key << key << YAML::Value;
      detail::emit_number(out, *v);
    };
    number("clock_hz", p.clock_hz);
    if (p.cores) out << YAML::Key << "cores" << YAML::Value << *p.cores;
    number("efficiency_flops_per_watt", p.efficiency_flops_per_watt);
    number("tdp_watts", p.tdp_watts);
    out << YAML::Key << "notes" << YAML::Value;
    detail::emit_string(out, p.notes);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return finish(out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nncost
