#pragma once

#include <cstdint>
#include <string_view>

#include "nncost/error.hpp"

namespace nncost {

// Overflow-checked unsigned arithmetic. Counts never wrap silently.

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::string_view what = "value") {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError(std::string(what) + " overflows 64-bit unsigned range");
  }
  return out;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, std::string_view what = "value") {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError(std::string(what) + " overflows 64-bit unsigned range");
  }
  return out;
}

}  // namespace nncost
