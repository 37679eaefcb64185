#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "latdesign/lattice_core.hpp"

namespace latdesign {

// Unsigned fixed-point fraction in [0, 1) with 64 * limbs fractional bits.
// Limbs are little-endian.
class FixedFrac {
 public:
  static constexpr std::size_t kMaxLimbs = 8;

  FixedFrac() = default;
  explicit FixedFrac(std::size_t limbs);

  std::size_t limbs() const { return n_; }
  unsigned bits() const { return static_cast<unsigned>(64 * n_); }
  std::uint64_t limb(std::size_t i) const { return v_[i]; }
  std::uint64_t& limb(std::size_t i) { return v_[i]; }

  // (this + o) mod 1
  void add_mod(const FixedFrac& o);
  // (this * k) mod 1
  FixedFrac times_mod(std::uint64_t k) const;
  // min(x, 1 - x): distance to the nearest integer.
  FixedFrac distance_to_integer() const;

  BigInt to_bigint() const;
  static FixedFrac from_bigint(const BigInt& v, std::size_t limbs);

  double to_double() const;
  // Scientific notation with `digits` significant digits.
  std::string to_decimal(int digits = 20) const;

  friend bool operator<(const FixedFrac& a, const FixedFrac& b) {
    for (std::size_t i = a.n_; i-- > 0;) {
      if (a.v_[i] != b.v_[i]) return a.v_[i] < b.v_[i];
    }
    return false;
  }
  friend bool operator==(const FixedFrac& a, const FixedFrac& b) {
    return a.n_ == b.n_ && a.v_ == b.v_;
  }

 private:
  std::size_t n_ = 0;
  std::array<std::uint64_t, kMaxLimbs> v_{};
};

// floor(p^{num/den} * 2^{frac_bits}) split into integer and fractional parts.
struct FixedRoot {
  BigInt integer_part;
  FixedFrac frac;
};

// Integer Newton iteration for the den-th root of p^num * 2^{den * frac_bits}.
// frac_bits must be a multiple of 64 in [64, 512].
FixedRoot fixed_root(std::int64_t p, std::int64_t num, std::int64_t den,
                     unsigned frac_bits);

// alpha = (p^{1/(d+1)}, ..., p^{d/(d+1)}).
struct AlgebraicVector {
  std::int64_t p = 2;
  std::size_t d = 0;
  unsigned frac_bits = 192;
  std::vector<BigInt> int_parts;
  std::vector<FixedFrac> fracs;
};

AlgebraicVector make_algebraic_vector(std::int64_t p, std::size_t d,
                                      unsigned frac_bits = 192);

// <N alpha> = max_j distance of N alpha_j to the nearest integer.
FixedFrac kron_distance(std::int64_t n, const AlgebraicVector& alpha);

struct ApproxRecord {
  std::size_t index = 1;
  std::int64_t n = 1;
  std::vector<std::int64_t> z;  // nearest integers to N alpha_j, unreduced
  FixedFrac dist;

  RankOneLattice lattice() const { return RankOneLattice(n, z); }
};

// Record for N_1 = 1.
ApproxRecord first_record(const AlgebraicVector& alpha);

// Smallest N > prev.n with strictly smaller distance. Scans at most
// `scan_limit` candidates, then throws LimitReached.
ApproxRecord next_best_approx(const AlgebraicVector& alpha, const ApproxRecord& prev,
                              std::int64_t scan_limit = 1'000'000'000);

struct ScanOptions {
  unsigned threads = 1;
  std::int64_t chunk = 1 << 22;
  // Called after each merged chunk with the last N covered.
  std::function<void(std::int64_t)> progress;
};

// Every record with N_i <= n_max, starting at N_1 = 1.
std::vector<ApproxRecord> explicit_sequence(const AlgebraicVector& alpha,
                                            std::int64_t n_max,
                                            const ScanOptions& options = {});

struct RatioStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

// Statistics of consecutive ratios N_i / N_{i-1}.
RatioStats ratio_stats(const std::vector<std::int64_t>& ns);

}  // namespace latdesign
