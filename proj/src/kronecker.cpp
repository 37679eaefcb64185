#include "latdesign/kronecker.hpp"

#include <algorithm>
#include <ios>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "latdesign/errors.hpp"
#include "latdesign/parallel.hpp"

namespace latdesign {

FixedFrac::FixedFrac(std::size_t limbs) : n_(limbs) {
  if (limbs == 0 || limbs > kMaxLimbs) throw std::invalid_argument("FixedFrac: limb count");
}

void FixedFrac::add_mod(const FixedFrac& o) {
  unsigned char carry = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t a = v_[i];
    const std::uint64_t s = a + o.v_[i];
    const unsigned char c1 = s < a;
    const std::uint64_t s2 = s + carry;
    const unsigned char c2 = s2 < s;
    v_[i] = s2;
    carry = c1 | c2;
  }
}

FixedFrac FixedFrac::times_mod(std::uint64_t k) const {
  FixedFrac r(n_);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const unsigned __int128 p = static_cast<unsigned __int128>(v_[i]) * k + carry;
    r.v_[i] = static_cast<std::uint64_t>(p);
    carry = p >> 64;
  }
  return r;
}

FixedFrac FixedFrac::distance_to_integer() const {
  if ((v_[n_ - 1] >> 63) == 0) return *this;
  // two's complement: 1 - x
  FixedFrac r(n_);
  unsigned char borrow = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t x = ~v_[i];
    const std::uint64_t s = x + borrow;
    borrow = (s < x) ? 1 : 0;
    r.v_[i] = s;
  }
  return r;
}

BigInt FixedFrac::to_bigint() const {
  BigInt r = 0;
  for (std::size_t i = n_; i-- > 0;) {
    r <<= 64;
    r += v_[i];
  }
  return r;
}

FixedFrac FixedFrac::from_bigint(const BigInt& v, std::size_t limbs) {
  FixedFrac r(limbs);
  BigInt x = v;
  const BigInt mask = (BigInt(1) << 64) - 1;
  for (std::size_t i = 0; i < limbs; ++i) {
    r.v_[i] = static_cast<std::uint64_t>(x & mask);
    x >>= 64;
  }
  return r;
}

double FixedFrac::to_double() const {
  double r = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    r = (r + static_cast<double>(v_[i])) * 0x1p-64;
  }
  return r;
}

std::string FixedFrac::to_decimal(int digits) const {
  if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
  using Dec = boost::multiprecision::cpp_dec_float_100;
  Dec num(to_bigint());
  Dec den(BigInt(1) << bits());
  const Dec q = num / den;
  return q.str(digits - 1, std::ios_base::scientific);
}

FixedRoot fixed_root(std::int64_t p, std::int64_t num, std::int64_t den,
                     unsigned frac_bits) {
  if (p < 2 || num <= 0 || den <= 0 || num >= den) {
    throw std::invalid_argument("fixed_root: need p >= 2 and 0 < num < den");
  }
  if (frac_bits == 0 || frac_bits % 64 != 0 || frac_bits > 64 * FixedFrac::kMaxLimbs) {
    throw std::invalid_argument("fixed_root: frac_bits must be a multiple of 64 in [64, 512]");
  }
  BigInt target = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(num));
  target <<= static_cast<unsigned>(den) * frac_bits;

  const unsigned k = static_cast<unsigned>(den);
  const std::size_t top = boost::multiprecision::msb(target);
  BigInt x = BigInt(1) << (top / k + 1);
  for (;;) {
    const BigInt y = ((k - 1) * x + target / boost::multiprecision::pow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  FixedRoot r;
  r.integer_part = x >> frac_bits;
  r.frac = FixedFrac::from_bigint(x, frac_bits / 64);
  return r;
}

AlgebraicVector make_algebraic_vector(std::int64_t p, std::size_t d, unsigned frac_bits) {
  if (d < 1) throw std::invalid_argument("algebraic vector: d must be >= 1");
  if (frac_bits < 192) throw std::invalid_argument("algebraic vector: frac_bits must be >= 192");
  if (p < 2) throw std::invalid_argument("algebraic vector: p must be prime");
  for (std::int64_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) throw std::invalid_argument("algebraic vector: p must be prime");
  }
  AlgebraicVector a;
  a.p = p;
  a.d = d;
  a.frac_bits = frac_bits;
  for (std::size_t j = 1; j <= d; ++j) {
    FixedRoot r = fixed_root(p, static_cast<std::int64_t>(j), static_cast<std::int64_t>(d + 1),
                             frac_bits);
    a.int_parts.push_back(r.integer_part);
    a.fracs.push_back(r.frac);
  }
  return a;
}

FixedFrac kron_distance(std::int64_t n, const AlgebraicVector& alpha) {
  if (n < 1) throw std::invalid_argument("kron_distance: N must be >= 1");
  FixedFrac best(alpha.frac_bits / 64);
  for (const auto& f : alpha.fracs) {
    const FixedFrac dj = f.times_mod(static_cast<std::uint64_t>(n)).distance_to_integer();
    if (best < dj) best = dj;
  }
  return best;
}

namespace {

ApproxRecord make_record(const AlgebraicVector& alpha, std::size_t index, std::int64_t n,
                         const FixedFrac& dist) {
  ApproxRecord r;
  r.index = index;
  r.n = n;
  r.dist = dist;
  const BigInt half = BigInt(1) << (alpha.frac_bits - 1);
  for (std::size_t j = 0; j < alpha.d; ++j) {
    // nearest integer to N * (int + frac)
    BigInt prod = alpha.fracs[j].to_bigint() * n + half;
    prod >>= alpha.frac_bits;
    const BigInt z = alpha.int_parts[j] * n + prod;
    r.z.push_back(static_cast<std::int64_t>(z));
  }
  return r;
}

struct LocalRecord {
  std::int64_t n;
  FixedFrac dist;
};

// Prefix minima of the distance over [lo, hi): every N whose distance is
// strictly below all earlier N in the range and below `bound`.
std::vector<LocalRecord> scan_range(const AlgebraicVector& alpha, std::int64_t lo,
                                    std::int64_t hi, const FixedFrac& bound) {
  std::vector<LocalRecord> out;
  if (lo >= hi) return out;
  const std::size_t d = alpha.d;
  const std::size_t limbs = alpha.frac_bits / 64;
  std::vector<FixedFrac> t(d);
  for (std::size_t j = 0; j < d; ++j) t[j] = alpha.fracs[j].times_mod(static_cast<std::uint64_t>(lo));
  FixedFrac best = bound;
  for (std::int64_t n = lo; n < hi; ++n) {
    bool below = true;
    FixedFrac worst(limbs);
    for (std::size_t j = 0; j < d; ++j) {
      const FixedFrac dj = t[j].distance_to_integer();
      if (!(dj < best)) {
        below = false;
        break;
      }
      if (worst < dj) worst = dj;
    }
    if (below) {
      best = worst;
      out.push_back({n, worst});
    }
    for (std::size_t j = 0; j < d; ++j) t[j].add_mod(alpha.fracs[j]);
  }
  return out;
}

}  // namespace

ApproxRecord first_record(const AlgebraicVector& alpha) {
  return make_record(alpha, 1, 1, kron_distance(1, alpha));
}

ApproxRecord next_best_approx(const AlgebraicVector& alpha, const ApproxRecord& prev,
                              std::int64_t scan_limit) {
  constexpr std::int64_t kChunk = 1 << 20;
  std::int64_t lo = prev.n + 1;
  const std::int64_t end = prev.n + 1 + scan_limit;
  while (lo < end) {
    const std::int64_t hi = std::min(end, lo + kChunk);
    const auto found = scan_range(alpha, lo, hi, prev.dist);
    if (!found.empty()) {
      return make_record(alpha, prev.index + 1, found.front().n, found.front().dist);
    }
    lo = hi;
  }
  throw LimitReached("next_best_approx: scan limit reached", end - 1);
}

std::vector<ApproxRecord> explicit_sequence(const AlgebraicVector& alpha, std::int64_t n_max,
                                            const ScanOptions& options) {
  if (n_max < 1) throw std::invalid_argument("explicit_sequence: N_max must be >= 1");
  std::vector<ApproxRecord> records{first_record(alpha)};
  const std::int64_t chunk = std::max<std::int64_t>(options.chunk, 1);
  const unsigned threads = resolve_threads(options.threads);
  // Tasks are grouped into rounds of `threads` chunks; each round merges in order.
  std::int64_t lo = 2;
  while (lo <= n_max) {
    const std::size_t round = std::max<unsigned>(threads, 1);
    std::vector<std::int64_t> starts;
    for (std::size_t t = 0; t < round && lo + static_cast<std::int64_t>(t) * chunk <= n_max; ++t) {
      starts.push_back(lo + static_cast<std::int64_t>(t) * chunk);
    }
    std::vector<std::vector<LocalRecord>> local(starts.size());
    const FixedFrac bound = records.back().dist;
    parallel_for(starts.size(), threads, [&](std::size_t t) {
      const std::int64_t hi = std::min(n_max + 1, starts[t] + chunk);
      local[t] = scan_range(alpha, starts[t], hi, bound);
    });
    for (const auto& part : local) {
      for (const auto& rec : part) {
        if (rec.dist < records.back().dist) {
          records.push_back(make_record(alpha, records.size() + 1, rec.n, rec.dist));
        }
      }
    }
    lo = std::min(n_max + 1, starts.back() + chunk);
    if (options.progress) options.progress(lo - 1);
  }
  return records;
}

RatioStats ratio_stats(const std::vector<std::int64_t>& ns) {
  if (ns.size() < 2) throw std::invalid_argument("ratio_stats: need at least two terms");
  std::vector<double> r;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    r.push_back(static_cast<double>(ns[i]) / static_cast<double>(ns[i - 1]));
  }
  std::sort(r.begin(), r.end());
  RatioStats s;
  s.min = r.front();
  s.max = r.back();
  const std::size_t m = r.size();
  s.median = (m % 2 == 1) ? r[m / 2] : 0.5 * (r[m / 2 - 1] + r[m / 2]);
  return s;
}

}  // namespace latdesign
