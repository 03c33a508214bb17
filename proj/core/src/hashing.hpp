#pragma once

#include <cstddef>

namespace ctlab::detail {

inline std::size_t mix(std::size_t h, std::size_t v) {
  std::size_t x = h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 29;
  return x;
}

}  // namespace ctlab::detail
