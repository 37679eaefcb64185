#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latdesign/lattice_core.hpp"

namespace latdesign {

// Lovasz parameter as an exact rational in (1/4, 1).
struct Delta {
  std::int64_t num = 99;
  std::int64_t den = 100;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// kFloating keeps the basis in exact integers but tracks Gram-Schmidt data in
// long double; kExact is the integral LLL with big-integer d_i / lambda_ij.
enum class LllArithmetic { kFloating, kExact };

struct ReductionResult {
  IntegerBasis basis;
  std::vector<std::int64_t> shortest;  // first reduced column
  std::int64_t shortest_norm_sq = 0;
  std::size_t swaps = 0;
};

ReductionResult lll_reduce(const IntegerBasis& b, Delta delta = {},
                           LllArithmetic arithmetic = LllArithmetic::kFloating);

struct ShortestVector {
  std::vector<std::int64_t> vector;  // integer coordinates, unscaled
  std::int64_t norm_sq = 0;          // of the integer vector
  double norm = 0.0;                 // Euclidean norm times the basis scale
};

// Minimum-norm column of a reduced basis (first one on ties).
ShortestVector shortest_basis_vector(const ReductionResult& r);

struct EnumerationLimits {
  std::size_t max_dim = 8;
  std::uint64_t max_nodes = 200'000'000;
};

// Exact shortest nonzero vector by Fincke-Pohst enumeration inside the ball
// whose radius is the LLL shortest norm. Ties resolve to the lexicographically
// smallest vector whose first nonzero entry is positive.
// Throws OracleInfeasible when a limit is exceeded.
ShortestVector exact_shortest(const IntegerBasis& b, EnumerationLimits limits = {});

// Exact rational Gram-Schmidt data of the integer columns.
struct ExactGramSchmidt {
  std::vector<boost::multiprecision::cpp_rational> mu;  // mu[i * dim + j], j < i
  std::vector<boost::multiprecision::cpp_rational> bstar_sq;
};

ExactGramSchmidt exact_gram_schmidt(const IntegerBasis& b);

// Checks |mu_ij| <= eta and the Lovasz condition with `delta`, exactly.
bool is_lll_reduced(const IntegerBasis& b, const boost::multiprecision::cpp_rational& delta,
                    const boost::multiprecision::cpp_rational& eta);

}  // namespace latdesign
