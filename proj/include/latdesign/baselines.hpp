#pragma once

#include <cstddef>
#include <cstdint>

#include "latdesign/lattice_core.hpp"

namespace latdesign {

// Radical inverse of n in the given base, exact to double rounding.
double radical_inverse(std::uint64_t n, std::uint64_t base);

// First N Halton points (index 0 is the origin), bases = first d primes, d <= 20.
PointSet halton(std::size_t n, std::size_t d);

// First N Sobol' points (index 0 is the origin), d <= 10, N <= 2^32.
PointSet sobol(std::size_t n, std::size_t d);

// N i.i.d. uniform points from the portable mt19937_64 stream.
PointSet uniform_random(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace latdesign
