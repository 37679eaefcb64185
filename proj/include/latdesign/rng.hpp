#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace latdesign {

// Portable seeded stream: mt19937_64 output mapped to doubles by hand so the
// values do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  // Standard normal by Box-Muller; consumes two uniforms per call.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream seed from a master seed and a path of identifiers.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// FNV-1a of a name, for use in derive_seed paths.
std::uint64_t name_hash(const char* name);

}  // namespace latdesign
