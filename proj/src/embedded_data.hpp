#pragma once

// Data files compiled into the library (generated from data/ at configure time).

#include <span>
#include <string_view>

namespace nncost::embedded {

struct EmbeddedFile {
  std::string_view name;
  std::string_view text;
};

std::string_view hardware_hwspec();
std::span<const EmbeddedFile> zoo_files();

}  // namespace nncost::embedded
