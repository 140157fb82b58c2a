#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace oblig::detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  // 64-bit variant of boost::hash_combine
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

inline std::size_t hash_mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return static_cast<std::size_t>(x);
}

struct triple_key {
  std::uint32_t a, b, c;
  bool operator==(const triple_key&) const = default;
};

struct triple_key_hash {
  std::size_t operator()(const triple_key& k) const noexcept {
    return hash_mix(((static_cast<std::uint64_t>(k.a) << 32) | k.b) ^
                    (hash_mix(k.c) << 1));
  }
};

struct pair_key_hash {
  std::size_t operator()(const std::pair<std::uint32_t, std::uint32_t>& k) const noexcept {
    return hash_mix((static_cast<std::uint64_t>(k.first) << 32) | k.second);
  }
};

}  // namespace oblig::detail
