#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nncost/spec_io.hpp"

namespace nncost {

struct ModelZooEntry {
  std::string id;
  SpecDocument spec;
  /// What the entry encodes and where it departs from the original model.
  std::string provenance;
};

/// Bundled reference networks, parsed and validated on first use.
const std::vector<ModelZooEntry>& model_zoo();

/// Throws NotFound naming the id.
const ModelZooEntry& zoo_entry(std::string_view id);

}  // namespace nncost
