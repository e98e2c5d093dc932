#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace svddfraud {

/// All randomness in the toolkit flows from std::mt19937_64 engines whose
/// seeds are derived with the helpers below.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-stage seed: mix64(master ^ fnv1a64(stage)). Adding a stage never
/// perturbs the seeds of existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stage) {
  return mix64(master ^ fnv1a64(stage));
}

/// Seed for the stream of item `index` within `group` (e.g. individual
/// within a GA generation).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t group, std::uint64_t index) {
  return mix64(mix64(base ^ mix64(group)) ^ index);
}

}  // namespace svddfraud
