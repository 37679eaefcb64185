#include "latdesign/lattice_core.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace latdesign {

using boost::multiprecision::cpp_rational;

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<__int128>(a) * static_cast<__int128>(b)) % n);
}

struct ExtGcd {
  std::int64_t g, u, v;  // u*a + v*b = g >= 0
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::int64_t reduce128(__int128 x, std::int64_t m) {
  __int128 r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

RankOneLattice::RankOneLattice(std::int64_t n, std::vector<std::int64_t> z)
    : n_(n), z_(std::move(z)) {
  if (n_ < 1) throw std::invalid_argument("rank-1 lattice: N must be >= 1");
  if (z_.empty()) throw std::invalid_argument("rank-1 lattice: d must be >= 1");
  std::int64_t g = n_;
  for (auto zj : z_) g = std::gcd(g, zj);
  if (g != 1) {
    throw std::invalid_argument("rank-1 lattice: gcd(N, z) = " +
                                std::to_string(g) + " != 1");
  }
}

RankOneLattice RankOneLattice::korobov(std::int64_t a, std::int64_t n,
                                       std::size_t d) {
  return RankOneLattice(n, korobov_vector(a, n, d));
}

std::vector<std::int64_t> RankOneLattice::reduced_z() const {
  std::vector<std::int64_t> r(z_.size());
  for (std::size_t j = 0; j < z_.size(); ++j) r[j] = mod_floor(z_[j], n_);
  return r;
}

std::optional<std::size_t> RankOneLattice::coprime_index() const {
  for (std::size_t j = 0; j < z_.size(); ++j) {
    if (std::gcd(mod_floor(z_[j], n_), n_) == 1) return j;
  }
  return std::nullopt;
}

IntegerBasis IntegerBasis::from_columns(
    const std::vector<std::vector<std::int64_t>>& cols, std::int64_t num,
    std::int64_t den) {
  IntegerBasis b(cols.size(), num, den);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != cols.size()) {
      throw std::invalid_argument("IntegerBasis: columns must be square");
    }
    std::copy(cols[j].begin(), cols[j].end(), b.column(j).begin());
  }
  return b;
}

IntegerBasis IntegerBasis::identity(std::size_t d) {
  IntegerBasis b(d);
  for (std::size_t i = 0; i < d; ++i) b(i, i) = 1;
  return b;
}

BigInt determinant(const IntegerBasis& b) {
  // Bareiss fraction-free elimination.
  const std::size_t n = b.dim;
  if (n == 0) return 1;
  std::vector<BigInt> m(b.entries.begin(), b.entries.end());
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[c * n + r]; };
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

__int128 norm_sq(std::span<const std::int64_t> v) {
  __int128 s = 0;
  for (auto x : v) s += static_cast<__int128>(x) * x;
  return s;
}

IntegerBasis hermite_basis(const std::vector<std::vector<std::int64_t>>& generators,
                           std::size_t dim, std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("hermite_basis: modulus must be >= 1");
  std::vector<std::vector<std::int64_t>> active;
  active.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("hermite_basis: generator size");
    std::vector<std::int64_t> v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = mod_floor(g[r], modulus);
    active.push_back(std::move(v));
  }

  IntegerBasis h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    // Pivot starts as modulus * e_i; absorb every active vector's row i entry.
    std::vector<std::int64_t> pivot(dim, 0);
    pivot[i] = modulus;
    for (auto& g : active) {
      if (g[i] == 0) continue;
      const std::int64_t a = pivot[i];
      const std::int64_t b = g[i];
      const ExtGcd e = ext_gcd(a, b);
      const std::int64_t bq = b / e.g;
      const std::int64_t aq = a / e.g;
      std::vector<std::int64_t> np(dim, 0), ng(dim, 0);
      np[i] = e.g;
      ng[i] = 0;
      for (std::size_t r = i + 1; r < dim; ++r) {
        const __int128 p = pivot[r];
        const __int128 q = g[r];
        np[r] = reduce128(static_cast<__int128>(e.u) * p + static_cast<__int128>(e.v) * q,
                          modulus);
        ng[r] = reduce128(static_cast<__int128>(bq) * p - static_cast<__int128>(aq) * q,
                          modulus);
      }
      pivot = std::move(np);
      g = std::move(ng);
    }
    std::copy(pivot.begin(), pivot.end(), h.column(i).begin());
  }

  // Canonical form: 0 <= H(i, j) < H(i, i) for j < i.
  for (std::size_t i = 1; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const std::int64_t q = h(i, j) >= 0 ? h(i, j) / h(i, i)
                                          : -((-h(i, j) + h(i, i) - 1) / h(i, i));
      if (q == 0) continue;
      for (std::size_t r = i; r < dim; ++r) h(r, j) -= q * h(r, i);
    }
  }
  return h;
}

bool in_integer_span(const IntegerBasis& b, std::span<const std::int64_t> v) {
  // Solve B x = v exactly; v is in the span iff x is integral.
  const std::size_t n = b.dim;
  std::vector<cpp_rational> m(n * (n + 1));
  auto at = [&](std::size_t r, std::size_t c) -> cpp_rational& {
    return m[r * (n + 1) + c];
  };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = b(r, c);
    at(r, n) = v[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && at(p, c) == 0) ++p;
    if (p == n) throw std::invalid_argument("in_integer_span: singular basis");
    if (p != c) {
      for (std::size_t k = 0; k <= n; ++k) std::swap(at(p, k), at(c, k));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c) == 0) continue;
      const cpp_rational f = at(r, c) / at(c, c);
      for (std::size_t k = c; k <= n; ++k) at(r, k) -= f * at(c, k);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const cpp_rational x = at(r, n) / at(r, r);
    if (boost::multiprecision::denominator(x) != 1) return false;
  }
  return true;
}

std::int64_t modular_inverse(std::int64_t a, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("modular_inverse: N must be >= 2");
  const std::int64_t ar = mod_floor(a, n);
  const ExtGcd e = ext_gcd(ar, n);
  if (e.g != 1) {
    throw std::invalid_argument("modular_inverse: " + std::to_string(a) +
                                " is not invertible mod " + std::to_string(n));
  }
  return mod_floor(e.u, n);
}

std::vector<std::int64_t> korobov_vector(std::int64_t a, std::int64_t n,
                                         std::size_t d) {
  if (n < 2 || a < 1 || a > n - 1) {
    throw std::invalid_argument("korobov_vector: a must lie in [1, N-1]");
  }
  std::vector<std::int64_t> z(d);
  std::int64_t p = 1;
  for (std::size_t j = 0; j < d; ++j) {
    z[j] = p;
    p = mulmod(p, a, n);
  }
  return z;
}

IntegerBasis primal_basis(const RankOneLattice& lat) {
  const std::size_t d = lat.dim();
  const std::int64_t n = lat.n();
  if (n == 1) return IntegerBasis::identity(d);

  const auto zr = lat.reduced_z();
  const auto j = lat.coprime_index();
  if (!j) {
    IntegerBasis h = hermite_basis({zr}, d, n);
    h.scale_den = n;
    return h;
  }

  // Explicit form with coordinate j moved first, then rows restored.
  const std::int64_t inv = modular_inverse(zr[*j], n);
  IntegerBasis b(d, 1, n);
  b(*j, 0) = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (k != *j) b(k, 0) = mulmod(inv, zr[k], n);
  }
  std::size_t col = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (k == *j) continue;
    b(k, col++) = n;
  }
  return b;
}

IntegerBasis dual_basis(const RankOneLattice& lat) {
  const std::size_t d = lat.dim();
  const std::int64_t n = lat.n();
  if (n == 1) return IntegerBasis::identity(d);

  const auto zr = lat.reduced_z();
  const auto j = lat.coprime_index();
  if (j) {
    const std::int64_t inv = modular_inverse(zr[*j], n);
    IntegerBasis b(d);
    b(*j, 0) = n;
    std::size_t col = 1;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == *j) continue;
      b(*j, col) = mod_floor(-mulmod(inv, zr[k], n), n);
      b(k, col) = 1;
      ++col;
    }
    return b;
  }

  // General case: N * B^{-T} for the lower-triangular primal Hermite basis B.
  const IntegerBasis p = primal_basis(lat);
  std::vector<std::vector<std::int64_t>> cols(d, std::vector<std::int64_t>(d));
  for (std::size_t c = 0; c < d; ++c) {
    // Solve B^T x = N e_c; B^T is upper triangular.
    std::vector<cpp_rational> x(d);
    for (std::size_t ii = d; ii-- > 0;) {
      cpp_rational s = (ii == c) ? cpp_rational(n) : cpp_rational(0);
      for (std::size_t k = ii + 1; k < d; ++k) s -= cpp_rational(p(k, ii)) * x[k];
      x[ii] = s / p(ii, ii);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (boost::multiprecision::denominator(x[r]) != 1) {
        throw std::logic_error("dual_basis: non-integral dual generator");
      }
      cols[c][r] = mod_floor(
          static_cast<std::int64_t>(boost::multiprecision::numerator(x[r]) % n), n);
    }
  }
  return hermite_basis(cols, d, n);
}

std::string to_string(PointLabel label) {
  switch (label) {
    case PointLabel::kLattice: return "lattice";
    case PointLabel::kHalton: return "halton";
    case PointLabel::kSobol: return "sobol";
    case PointLabel::kRandom: return "random";
  }
  return "unknown";
}

PointSet generate_points(const RankOneLattice& lat,
                         std::optional<std::vector<double>> shift) {
  const std::size_t d = lat.dim();
  const std::int64_t n = lat.n();
  if (shift) {
    if (shift->size() != d) throw std::invalid_argument("generate_points: shift size");
    for (double s : *shift) {
      if (!(s >= 0.0 && s < 1.0)) {
        throw std::invalid_argument("generate_points: shift must lie in [0,1)^d");
      }
    }
  }
  const auto zr = lat.reduced_z();
  PointSet ps;
  ps.dim = d;
  ps.label = PointLabel::kLattice;
  ps.coords.resize(static_cast<std::size_t>(n) * d);
  std::vector<std::int64_t> pos(d, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    double* row = ps.coords.data() + static_cast<std::size_t>(i) * d;
    for (std::size_t k = 0; k < d; ++k) {
      double x = static_cast<double>(pos[k]) / static_cast<double>(n);
      if (shift) {
        x += (*shift)[k];
        if (x >= 1.0) x -= 1.0;
      }
      row[k] = x;
      pos[k] += zr[k];
      if (pos[k] >= n) pos[k] -= n;
    }
  }
  return ps;
}

void write_points_csv(std::ostream& os, const PointSet& ps) {
  for (std::size_t k = 0; k < ps.dim; ++k) {
    if (k) os << ',';
    os << 'x' << (k + 1);
  }
  os << '\n';
  char buf[40];
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = ps.point(i);
    for (std::size_t k = 0; k < ps.dim; ++k) {
      if (k) os << ',';
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace latdesign
