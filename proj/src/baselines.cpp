#include "latdesign/baselines.hpp"

#include <array>
#include <stdexcept>

#include "latdesign/rng.hpp"

namespace latdesign {

namespace {

constexpr std::array<std::uint64_t, 20> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                   31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// Primitive polynomials and initial direction numbers for dimensions 2..10,
// from the Joe-Kuo "new-joe-kuo-6.21201" table (S. Joe and F. Y. Kuo,
// SIAM J. Sci. Comput. 30, 2008). Dimension 1 is van der Corput.
struct SobolEntry {
  unsigned degree;
  std::uint32_t a;
  std::array<std::uint32_t, 5> m;
};

constexpr std::array<SobolEntry, 9> kJoeKuo = {{
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
}};

constexpr unsigned kSobolBits = 32;

std::array<std::uint32_t, kSobolBits> direction_numbers(std::size_t dim) {
  std::array<std::uint32_t, kSobolBits> v{};
  if (dim == 0) {
    for (unsigned k = 0; k < kSobolBits; ++k) v[k] = 1u << (kSobolBits - 1 - k);
    return v;
  }
  const SobolEntry& e = kJoeKuo[dim - 1];
  const unsigned s = e.degree;
  for (unsigned k = 0; k < s; ++k) v[k] = e.m[k] << (kSobolBits - 1 - k);
  for (unsigned k = s; k < kSobolBits; ++k) {
    v[k] = v[k - s] ^ (v[k - s] >> s);
    for (unsigned i = 1; i < s; ++i) {
      if ((e.a >> (s - 1 - i)) & 1u) v[k] ^= v[k - i];
    }
  }
  return v;
}

}  // namespace

double radical_inverse(std::uint64_t n, std::uint64_t base) {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  while (n > 0) {
    num = num * base + n % base;
    den *= base;
    n /= base;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

PointSet halton(std::size_t n, std::size_t d) {
  if (d < 1 || d > kPrimes.size()) throw std::invalid_argument("halton: d must lie in [1, 20]");
  PointSet ps;
  ps.dim = d;
  ps.label = PointLabel::kHalton;
  ps.coords.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) ps.coords[i * d + k] = radical_inverse(i, kPrimes[k]);
  }
  return ps;
}

PointSet sobol(std::size_t n, std::size_t d) {
  if (d < 1 || d > kJoeKuo.size() + 1) throw std::invalid_argument("sobol: d must lie in [1, 10]");
  if (n > (std::size_t{1} << kSobolBits)) throw std::invalid_argument("sobol: N must be <= 2^32");
  std::vector<std::array<std::uint32_t, kSobolBits>> dirs;
  for (std::size_t k = 0; k < d; ++k) dirs.push_back(direction_numbers(k));
  PointSet ps;
  ps.dim = d;
  ps.label = PointLabel::kSobol;
  ps.coords.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      std::uint32_t x = 0;
      std::uint64_t bits = i;
      for (unsigned b = 0; bits != 0; ++b, bits >>= 1) {
        if (bits & 1u) x ^= dirs[k][b];
      }
      ps.coords[i * d + k] = static_cast<double>(x) * 0x1p-32;
    }
  }
  return ps;
}

PointSet uniform_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("uniform_random: d must be >= 1");
  Rng rng(seed);
  PointSet ps;
  ps.dim = d;
  ps.label = PointLabel::kRandom;
  ps.coords.resize(n * d);
  for (auto& x : ps.coords) x = rng.uniform();
  return ps;
}

}  // namespace latdesign
