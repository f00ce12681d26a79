#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nncost/cost.hpp"
#include "nncost/report.hpp"
#include "nncost/service.hpp"
#include "nncost/spec_io.hpp"
#include "nncost/zoo.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

std::string network_cost_json(const std::string& text, bool strict) {
  const auto doc = nncost::parse_spec(text, nncost::ParseOptions{strict});
  const auto cost = nncost::network_cost(doc.network);
  json layers = json::array();
  for (std::size_t i = 0; i < cost.per_layer.size(); ++i) {
    const auto& c = cost.per_layer[i];
    layers.push_back({{"index", i},
                      {"type", std::string(nncost::layer_kind(doc.network.layers[i]))},
                      {"flops", c.flops},
                      {"macs", c.macs},
                      {"weights", c.weights},
                      {"output_shape", {{"rows", c.output_shape.rows},
                                        {"cols", c.output_shape.cols},
                                        {"channels", c.output_shape.channels}}},
                      {"warnings", c.warnings}});
  }
  return nncost::render_json({{"name", doc.network.name},
                              {"per_layer", std::move(layers)},
                              {"total_flops", cost.total_flops},
                              {"total_macs", cost.total_macs},
                              {"total_weights", cost.total_weights}});
}

}  // namespace

PYBIND11_MODULE(_nncost, m) {
  m.doc() = "FLOPs, energy and carbon footprint of layer-chain neural networks";
  m.attr("__version__") = std::string(nncost::kToolVersion);

  static py::exception<nncost::Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nncost::Error& e) {
      py::object line = py::none(), column = py::none();
      if (e.location()) {
        line = py::int_(e.location()->line);
        column = py::int_(e.location()->column);
      }
      py::tuple args = py::make_tuple(std::string(e.what()), std::string(nncost::error_code(e.kind())),
                                      nncost::exit_code(e.kind()), line, column);
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  m.def("analyze", [](const std::string& body) {
    return nncost::render_json(nncost::to_json(nncost::analyze(nncost::decode_analysis_request(body))));
  }, py::arg("request_json"));
  m.def("compare", [](const std::string& body) {
    return nncost::render_json(nncost::to_json(nncost::compare(nncost::decode_compare_request(body))));
  }, py::arg("request_json"));
  m.def("curve", [](const std::string& body) {
    return nncost::render_json(nncost::to_json(nncost::curve(nncost::decode_curve_request(body))));
  }, py::arg("request_json"));

  m.def("parse_spec", [](const std::string& text, bool strict) {
    return nncost::render_json(nncost::to_json(nncost::parse_spec(text, nncost::ParseOptions{strict})));
  }, py::arg("text"), py::arg("strict") = true);
  m.def("normalize_spec", [](const std::string& text, bool strict) {
    return nncost::serialize_spec(nncost::parse_spec(text, nncost::ParseOptions{strict}));
  }, py::arg("text"), py::arg("strict") = true);
  m.def("network_cost", &network_cost_json, py::arg("text"), py::arg("strict") = true);

  m.def("hardware_profiles", [] {
    json out = json::array();
    for (const auto& p : nncost::builtin_database().profiles()) out.push_back(nncost::to_json(p));
    return nncost::render_json(out);
  });
  m.def("zoo", [] {
    json out = json::array();
    for (const auto& e : nncost::model_zoo()) {
      out.push_back({{"id", e.id}, {"provenance", e.provenance}, {"spec", nncost::to_json(e.spec)}});
    }
    return nncost::render_json(out);
  });

  m.def("handle", [](const std::string& method, const std::string& path,
                     const std::string& content_type, const std::string& body) {
    const auto r = nncost::handle({method, path, content_type, body});
    return py::make_tuple(r.status, r.body);
  }, py::arg("method"), py::arg("path"), py::arg("content_type") = "application/json",
     py::arg("body") = "");
}
