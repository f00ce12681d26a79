#include "nncost/zoo.hpp"

#include <map>

#include "embedded_data.hpp"
#include "nncost/cost.hpp"
#include "nncost/error.hpp"

namespace nncost {

namespace {

const std::map<std::string_view, std::string_view>& provenance_notes() {
  static const std::map<std::string_view, std::string_view> notes = {
      {"worked-example-3layer",
       "Exact encoding of the three-layer guiding example: 100x100x3 input, conv 3x3/s1/p1 with one "
       "filter, pool 2x2/s2, dense 4. The conv layer carries relu, so the activation surcharge is "
       "included (312 532 FLOPs; 312 504 without it). 0.3125 MFLOPs, quoted as 0.312 to three decimals."},
      {"dummy-linear",
       "Linear baseline: the 16x924x2 channel-response tensor attached directly to 3 outputs "
       "(X, Y, Z). 88 707 weights, consistent with the '<0.1 M' weights of the dummy baseline."},
      {"pirnateco-stem-besteffort",
       "BEST EFFORT. Encoded from the prose description only: 1x7/s1x3 stem conv with 32 filters, "
       "1x4 pool, four stages of four 3x3 convs with 32/64/128/256 filters, FC-1000 with "
       "leaky_relu (alpha 1e-3 kept as metadata). Guessed: valid padding on stem and pool (floored "
       "window counts), padding 1 on block convs, stride 2 at each stage transition, a global "
       "average pool over the final 2x10 map, a 3-unit output head. Omitted: batch normalization, "
       "residual additions and projection shortcuts, which have no FLOP formula here. The full "
       "architecture diagram is not available as text, so neither the published 3.1 M weights nor "
       "the 345 MFLOPs are targeted or claimed."},
  };
  return notes;
}

std::vector<ModelZooEntry> load_zoo() {
  std::vector<ModelZooEntry> zoo;
  for (const auto& file : embedded::zoo_files()) {
    ModelZooEntry entry;
    entry.id = std::string(file.name);
    try {
      entry.spec = parse_spec(file.text);
      // Every bundled entry must survive shape inference.
      (void)network_cost(entry.spec.network);
    } catch (const Error& e) {
      throw Error(e.kind(), "bundled zoo entry '" + entry.id + "': " + e.what());
    }
    const auto& notes = provenance_notes();
    if (auto it = notes.find(entry.id); it != notes.end()) entry.provenance = std::string(it->second);
    zoo.push_back(std::move(entry));
  }
  return zoo;
}

}  // namespace

const std::vector<ModelZooEntry>& model_zoo() {
  static const std::vector<ModelZooEntry> zoo = load_zoo();
  return zoo;
}

const ModelZooEntry& zoo_entry(std::string_view id) {
  for (const auto& e : model_zoo()) {
    if (e.id == id) return e;
  }
  throw NotFound("unknown zoo id '" + std::string(id) + "'");
}

}  // namespace nncost
