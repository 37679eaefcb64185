#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace latdesign {

using BigInt = boost::multiprecision::cpp_int;

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// a mod n in [0, n).
std::int64_t mod_floor(std::int64_t a, std::int64_t n);

// Rank-1 lattice P_{N,z} = { frac(n z / N) : n = 0..N-1 }.
// z is kept exactly as given; reduction mod N happens when points or bases
// are built.
class RankOneLattice {
 public:
  RankOneLattice(std::int64_t n, std::vector<std::int64_t> z);

  // z = (1, a, ..., a^{d-1}) mod N.
  static RankOneLattice korobov(std::int64_t a, std::int64_t n, std::size_t d);

  std::int64_t n() const { return n_; }
  std::size_t dim() const { return z_.size(); }
  const std::vector<std::int64_t>& z() const { return z_; }
  std::vector<std::int64_t> reduced_z() const;

  // Smallest coordinate index j with gcd(z_j, N) = 1, if any.
  std::optional<std::size_t> coprime_index() const;

  bool operator==(const RankOneLattice&) const = default;

 private:
  std::int64_t n_;
  std::vector<std::int64_t> z_;
};

// Square integer matrix whose columns generate scale * (integer lattice).
// The scale is the rational scale_num / scale_den.
struct IntegerBasis {
  std::size_t dim = 0;
  std::vector<std::int64_t> entries;  // column-major, dim * dim
  std::int64_t scale_num = 1;
  std::int64_t scale_den = 1;

  IntegerBasis() = default;
  IntegerBasis(std::size_t d, std::int64_t num = 1, std::int64_t den = 1)
      : dim(d), entries(d * d, 0), scale_num(num), scale_den(den) {}

  // Builds from a list of column vectors.
  static IntegerBasis from_columns(
      const std::vector<std::vector<std::int64_t>>& cols,
      std::int64_t num = 1, std::int64_t den = 1);

  static IntegerBasis identity(std::size_t d);

  std::int64_t& operator()(std::size_t row, std::size_t col) {
    return entries[col * dim + row];
  }
  std::int64_t operator()(std::size_t row, std::size_t col) const {
    return entries[col * dim + row];
  }

  std::span<std::int64_t> column(std::size_t j) {
    return {entries.data() + j * dim, dim};
  }
  std::span<const std::int64_t> column(std::size_t j) const {
    return {entries.data() + j * dim, dim};
  }

  double scale() const {
    return static_cast<double>(scale_num) / static_cast<double>(scale_den);
  }

  bool operator==(const IntegerBasis&) const = default;
};

// Exact determinant of the integer columns (fraction-free elimination).
BigInt determinant(const IntegerBasis& b);

// Squared Euclidean norm of an integer vector, exact.
__int128 norm_sq(std::span<const std::int64_t> v);

// Canonical lower-triangular Hermite basis of the lattice generated by
// `generators` together with modulus * Z^d. Two generator sets span the same
// lattice (containing modulus * Z^d) iff their Hermite bases are equal.
IntegerBasis hermite_basis(const std::vector<std::vector<std::int64_t>>& generators,
                           std::size_t dim, std::int64_t modulus);

// True iff v lies in the integer column span of b.
bool in_integer_span(const IntegerBasis& b, std::span<const std::int64_t> v);

std::int64_t modular_inverse(std::int64_t a, std::int64_t n);

std::vector<std::int64_t> korobov_vector(std::int64_t a, std::int64_t n,
                                         std::size_t d);

// N * T for the lattice (1/N) z Z + Z^d, stored with scale 1/N.
IntegerBasis primal_basis(const RankOneLattice& lat);

// Basis of { h in Z^d : h . z = 0 mod N }, scale 1.
IntegerBasis dual_basis(const RankOneLattice& lat);

enum class PointLabel { kLattice, kHalton, kSobol, kRandom };

std::string to_string(PointLabel label);

struct PointSet {
  std::size_t dim = 0;
  std::vector<double> coords;  // row-major, size() * dim
  PointLabel label = PointLabel::kLattice;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * dim, dim};
  }
};

PointSet generate_points(const RankOneLattice& lat,
                         std::optional<std::vector<double>> shift = std::nullopt);

// Header "x1,...,xd" then one point per row, 17 significant digits.
void write_points_csv(std::ostream& os, const PointSet& ps);

}  // namespace latdesign
