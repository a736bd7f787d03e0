#pragma once

// SplitMix64 as both the seed hash and the stream generator.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform()  = (next() >> 11) * 2^-53, in [0, 1).
// normal()   = Box-Muller on (u1, u2) = (1 - uniform(), uniform()):
//              sqrt(-2 ln u1) * cos(2 pi u2); the sine half is discarded so
//              every normal consumes exactly two draws.
// complex_gaussian() = (normal() + i normal()) / sqrt(2), real part first.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "wnr/linalg.hpp"

namespace wnr {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child seed for `tag`; distinct tags give independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (tag + 1));
}

/// FNV-1a, used to turn names into tags.
constexpr std::uint64_t name_tag(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_gaussian() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::numbers::sqrt2;
  }

private:
  std::uint64_t state_;
};

} // namespace wnr
