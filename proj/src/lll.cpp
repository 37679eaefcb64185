#include "latdesign/lll.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latdesign/errors.hpp"

namespace latdesign {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

void axpy_checked(std::span<std::int64_t> dst, std::int64_t q,
                  std::span<const std::int64_t> src) {
  // dst -= q * src
  for (std::size_t i = 0; i < dst.size(); ++i) {
    std::int64_t prod;
    if (__builtin_mul_overflow(q, src[i], &prod) ||
        __builtin_sub_overflow(dst[i], prod, &dst[i])) {
      throw std::overflow_error("lll_reduce: basis entry overflow");
    }
  }
}

__int128 dot128(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

void swap_columns(IntegerBasis& b, std::size_t i, std::size_t j) {
  std::swap_ranges(b.column(i).begin(), b.column(i).end(), b.column(j).begin());
}

std::int64_t to_int64_checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("norm exceeds int64");
  return static_cast<std::int64_t>(v);
}

// Floating-point Gram-Schmidt over an exact integer basis.
class FloatingLll {
 public:
  FloatingLll(IntegerBasis& b, long double delta)
      : b_(b), n_(b.dim), delta_(delta), mu_(n_ * n_, 0.0L), bstar_(n_, 0.0L) {}

  std::size_t run() {
    if (n_ == 0) return 0;
    gs_row(0);
    std::size_t k = 1;
    std::size_t swaps = 0;
    std::size_t guard = 0;
    while (k < n_) {
      if (++guard > 10'000'000) throw std::runtime_error("lll_reduce: no convergence");
      gs_row(k);
      size_reduce(k);
      const long double m = mu(k, k - 1);
      if (bstar_[k] >= (delta_ - m * m) * bstar_[k - 1]) {
        ++k;
      } else {
        swap_columns(b_, k, k - 1);
        ++swaps;
        k = std::max<std::size_t>(k - 1, 1);
        if (k == 1) gs_row(0);
      }
    }
    return swaps;
  }

 private:
  long double& mu(std::size_t i, std::size_t j) { return mu_[i * n_ + j]; }

  void gs_row(std::size_t k) {
    const auto bk = b_.column(k);
    for (std::size_t j = 0; j < k; ++j) {
      long double s = static_cast<long double>(dot128(bk, b_.column(j)));
      for (std::size_t i = 0; i < j; ++i) s -= mu(j, i) * mu(k, i) * bstar_[i];
      mu(k, j) = s / bstar_[j];
    }
    long double s = static_cast<long double>(dot128(bk, bk));
    for (std::size_t j = 0; j < k; ++j) s -= mu(k, j) * mu(k, j) * bstar_[j];
    if (!(s > 0.0L)) throw std::invalid_argument("lll_reduce: singular basis");
    bstar_[k] = s;
  }

  void size_reduce(std::size_t k) {
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (std::size_t j = k; j-- > 0;) {
        const long double m = mu(k, j);
        if (std::fabs(m) <= 0.5L) continue;
        const long double qr = std::nearbyint(m);
        if (std::fabs(qr) > 9.0e18L) throw std::overflow_error("lll_reduce: quotient overflow");
        const std::int64_t q = static_cast<std::int64_t>(qr);
        axpy_checked(b_.column(k), q, b_.column(j));
        for (std::size_t i = 0; i < j; ++i) mu(k, i) -= qr * mu(j, i);
        mu(k, j) -= qr;
        changed = true;
      }
      if (!changed) return;
      // Refresh from the exact basis so rounding does not accumulate.
      gs_row(k);
    }
  }

  IntegerBasis& b_;
  std::size_t n_;
  long double delta_;
  std::vector<long double> mu_;
  std::vector<long double> bstar_;
};

// Integral LLL (all Gram-Schmidt data as exact integers).
class ExactLll {
 public:
  ExactLll(IntegerBasis& b, Delta delta)
      : b_(b), n_(b.dim), p_(delta.num), q_(delta.den),
        d_(n_ + 1, cpp_int(0)), lam_((n_ + 1) * (n_ + 1), cpp_int(0)) {}

  std::size_t run() {
    if (n_ == 0) return 0;
    d_[0] = 1;
    d_[1] = cpp_int(dot128_big(1, 1));
    if (d_[1] == 0) throw std::invalid_argument("lll_reduce: singular basis");
    if (n_ == 1) return 0;
    std::size_t k = 2;
    std::size_t kmax = 1;
    std::size_t swaps = 0;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          cpp_int u = dot128_big(k, j);
          for (std::size_t i = 1; i < j; ++i) {
            u = (d_[i] * u - lam(k, i) * lam(j, i)) / d_[i - 1];
          }
          if (j < k) {
            lam(k, j) = u;
          } else {
            if (u == 0) throw std::invalid_argument("lll_reduce: singular basis");
            d_[k] = u;
          }
        }
      }
      for (;;) {
        redi(k, k - 1);
        const cpp_int lhs = q_ * d_[k] * d_[k - 2];
        const cpp_int rhs = p_ * d_[k - 1] * d_[k - 1] - q_ * lam(k, k - 1) * lam(k, k - 1);
        if (lhs < rhs) {
          swapi(k, kmax);
          ++swaps;
          k = std::max<std::size_t>(2, k - 1);
          continue;
        }
        for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
        ++k;
        break;
      }
    }
    return swaps;
  }

 private:
  cpp_int& lam(std::size_t i, std::size_t j) { return lam_[i * (n_ + 1) + j]; }

  cpp_int dot128_big(std::size_t i, std::size_t j) const {
    const __int128 v = dot128(b_.column(i - 1), b_.column(j - 1));
    // cpp_int has no __int128 constructor on every toolchain; split it.
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                              : static_cast<unsigned __int128>(v);
    cpp_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? cpp_int(-r) : r;
  }

  void redi(std::size_t k, std::size_t l) {
    cpp_int two_lam = 2 * lam(k, l);
    if (abs(two_lam) <= d_[l]) return;
    // q = nearest integer to lam / d_l
    cpp_int num = 2 * lam(k, l) + d_[l];
    cpp_int den = 2 * d_[l];
    cpp_int qb = num / den;
    if ((num % den != 0) && (num < 0)) qb -= 1;  // floor
    if (qb > INT64_MAX || qb < INT64_MIN) throw std::overflow_error("lll_reduce: quotient");
    const std::int64_t q = static_cast<std::int64_t>(qb);
    axpy_checked(b_.column(k - 1), q, b_.column(l - 1));
    lam(k, l) -= qb * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam(k, i) -= qb * lam(l, i);
  }

  void swapi(std::size_t k, std::size_t kmax) {
    swap_columns(b_, k - 1, k - 2);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    const cpp_int l = lam(k, k - 1);
    const cpp_int bb = (d_[k - 2] * d_[k] + l * l) / d_[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const cpp_int t = lam(i, k);
      lam(i, k) = (d_[k] * lam(i, k - 1) - l * t) / d_[k - 1];
      lam(i, k - 1) = (bb * t + l * lam(i, k)) / d_[k];
    }
    d_[k - 1] = bb;
  }

  IntegerBasis& b_;
  std::size_t n_;
  cpp_int p_, q_;
  std::vector<cpp_int> d_;
  std::vector<cpp_int> lam_;
};

bool canonical_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void canonicalize_sign(std::vector<std::int64_t>& v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    return;
  }
}

}  // namespace

ReductionResult lll_reduce(const IntegerBasis& b, Delta delta, LllArithmetic arithmetic) {
  if (delta.den <= 0 || 4 * delta.num <= delta.den || delta.num >= delta.den) {
    throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
  }
  ReductionResult r;
  r.basis = b;
  if (arithmetic == LllArithmetic::kExact) {
    r.swaps = ExactLll(r.basis, delta).run();
  } else {
    const long double dl =
        static_cast<long double>(delta.num) / static_cast<long double>(delta.den);
    r.swaps = FloatingLll(r.basis, dl).run();
  }
  if (b.dim > 0) {
    const auto c0 = r.basis.column(0);
    r.shortest.assign(c0.begin(), c0.end());
    r.shortest_norm_sq = to_int64_checked(norm_sq(c0));
  }
  return r;
}

ShortestVector shortest_basis_vector(const ReductionResult& r) {
  ShortestVector s;
  const IntegerBasis& b = r.basis;
  if (b.dim == 0) return s;
  std::size_t best = 0;
  __int128 best_sq = norm_sq(b.column(0));
  for (std::size_t j = 1; j < b.dim; ++j) {
    const __int128 v = norm_sq(b.column(j));
    if (v < best_sq) {
      best_sq = v;
      best = j;
    }
  }
  const auto c = b.column(best);
  s.vector.assign(c.begin(), c.end());
  s.norm_sq = to_int64_checked(best_sq);
  s.norm = std::sqrt(static_cast<double>(s.norm_sq)) * b.scale();
  return s;
}

ShortestVector exact_shortest(const IntegerBasis& b, EnumerationLimits limits) {
  const std::size_t n = b.dim;
  if (n == 0) throw std::invalid_argument("exact_shortest: empty basis");
  if (n > limits.max_dim) {
    throw OracleInfeasible("exact_shortest: dimension " + std::to_string(n) +
                           " exceeds enumeration limit " + std::to_string(limits.max_dim));
  }
  const ReductionResult red = lll_reduce(b);
  const IntegerBasis& r = red.basis;

  std::vector<long double> mu(n * n, 0.0L), bstar(n, 0.0L);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      long double s = static_cast<long double>(dot128(r.column(k), r.column(j)));
      for (std::size_t i = 0; i < j; ++i) s -= mu[j * n + i] * mu[k * n + i] * bstar[i];
      mu[k * n + j] = s / bstar[j];
    }
    long double s = static_cast<long double>(norm_sq(r.column(k)));
    for (std::size_t j = 0; j < k; ++j) s -= mu[k * n + j] * mu[k * n + j] * bstar[j];
    bstar[k] = s;
  }

  ShortestVector best = shortest_basis_vector(red);
  canonicalize_sign(best.vector);
  // Radius grows slightly so that fp error never prunes a true minimum or a tie.
  auto radius = [&] {
    const long double a = static_cast<long double>(best.norm_sq);
    return a * (1.0L + 1e-12L) + 1e-9L;
  };

  // Coefficient-box guard before descending.
  {
    long double est = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
      est *= 2.0L * std::sqrt(radius() / bstar[i]) + 1.0L;
    }
    if (est > static_cast<long double>(limits.max_nodes) * 64.0L) {
      throw OracleInfeasible("exact_shortest: enumeration box too large");
    }
  }

  std::vector<std::int64_t> x(n, 0);
  std::vector<long double> partial(n + 1, 0.0L);
  std::vector<long double> center(n, 0.0L);
  std::vector<std::int64_t> v(n);
  std::uint64_t nodes = 0;

  auto visit_leaf = [&] {
    bool nonzero = false;
    for (auto xi : x) nonzero |= (xi != 0);
    if (!nonzero) return;
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] != 0) axpy_checked(v, -x[j], r.column(j));
    }
    const std::int64_t nsq = to_int64_checked(norm_sq(v));
    if (nsq > best.norm_sq) return;
    std::vector<std::int64_t> cand = v;
    canonicalize_sign(cand);
    if (nsq < best.norm_sq || canonical_less(cand, best.vector)) {
      best.vector = std::move(cand);
      best.norm_sq = nsq;
    }
  };

  // Depth-first over levels n-1 .. 0.
  auto descend = [&](auto&& self, std::size_t level) -> void {
    if (++nodes > limits.max_nodes) {
      throw OracleInfeasible("exact_shortest: node budget exceeded");
    }
    long double c = 0.0L;
    for (std::size_t j = level + 1; j < n; ++j) c -= mu[j * n + level] * static_cast<long double>(x[j]);
    center[level] = c;
    const long double room = radius() - partial[level + 1];
    if (room < 0.0L) return;
    const long double w = std::sqrt(room / bstar[level]);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - w));
    const auto hi = static_cast<std::int64_t>(std::floor(c + w));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      const long double t = static_cast<long double>(xi) - c;
      const long double p = partial[level + 1] + t * t * bstar[level];
      if (p > radius()) continue;
      x[level] = xi;
      partial[level] = p;
      if (level == 0) {
        visit_leaf();
      } else {
        self(self, level - 1);
      }
    }
    x[level] = 0;
  };
  descend(descend, n - 1);

  best.norm = std::sqrt(static_cast<double>(best.norm_sq)) * b.scale();
  return best;
}

ExactGramSchmidt exact_gram_schmidt(const IntegerBasis& b) {
  const std::size_t n = b.dim;
  ExactGramSchmidt gs;
  gs.mu.assign(n * n, cpp_rational(0));
  gs.bstar_sq.assign(n, cpp_rational(0));
  std::vector<std::vector<cpp_rational>> bs(n, std::vector<cpp_rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n; ++r) bs[i][r] = b(r, i);
    for (std::size_t j = 0; j < i; ++j) {
      cpp_rational dot = 0;
      for (std::size_t r = 0; r < n; ++r) dot += cpp_rational(b(r, i)) * bs[j][r];
      const cpp_rational m = dot / gs.bstar_sq[j];
      gs.mu[i * n + j] = m;
      for (std::size_t r = 0; r < n; ++r) bs[i][r] -= m * bs[j][r];
    }
    cpp_rational s = 0;
    for (std::size_t r = 0; r < n; ++r) s += bs[i][r] * bs[i][r];
    gs.bstar_sq[i] = s;
  }
  return gs;
}

bool is_lll_reduced(const IntegerBasis& b, const cpp_rational& delta, const cpp_rational& eta) {
  const std::size_t n = b.dim;
  const ExactGramSchmidt gs = exact_gram_schmidt(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gs.mu[i * n + j]) > eta) return false;
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const cpp_rational m = gs.mu[k * n + k - 1];
    if (gs.bstar_sq[k] < (delta - m * m) * gs.bstar_sq[k - 1]) return false;
  }
  return true;
}

}  // namespace latdesign
