#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latdesign/lll.hpp"

namespace latdesign {

bool is_prime(std::int64_t n);

// Largest primes below 2^k for k = 2..19: 3, 7, 13, ..., 524287.
std::vector<std::int64_t> primes_below_pow2();

// Parses a comma list of N values or a preset name: "primes-pow2" or
// "pow2" (2^2 .. 2^16).
std::vector<std::int64_t> parse_ladder(const std::string& text);

// Korobov lattice quality: product of the shortest primal and dual vector
// lengths. The primal length carries the 1/N scale.
struct KorobovScore {
  std::int64_t a = 0;
  std::int64_t primal_norm_sq = 0;  // of the shortest vector of N * Lambda
  std::int64_t dual_norm_sq = 0;    // of the shortest vector of the dual
  double lambda1_primal = 0.0;
  double lambda1_dual = 0.0;
  double score = 0.0;

  // score^2 * N^2, exact; orders scores for a fixed N.
  unsigned __int128 key() const {
    return static_cast<unsigned __int128>(primal_norm_sq) *
           static_cast<unsigned __int128>(dual_norm_sq);
  }
};

// LLL-based score.
KorobovScore korobov_score(std::int64_t n, std::size_t d, std::int64_t a, Delta delta = {},
                           LllArithmetic arithmetic = LllArithmetic::kFloating);

// Same quantity with exact shortest vectors.
KorobovScore exact_korobov_score(std::int64_t n, std::size_t d, std::int64_t a,
                                 EnumerationLimits limits = {});

struct SearchOptions {
  Delta delta;
  LllArithmetic arithmetic = LllArithmetic::kFloating;
  unsigned threads = 1;
  bool keep_table = false;
};

struct SearchResult {
  std::int64_t n = 0;
  std::size_t d = 0;
  std::int64_t a_star = 1;
  double score = 0.0;
  double lambda1_primal = 0.0;
  double lambda1_dual = 0.0;
  std::int64_t primal_norm_sq = 0;
  std::int64_t dual_norm_sq = 0;
  std::optional<std::string> warning;  // set when N is not prime
  std::optional<std::vector<double>> per_a_scores;  // index a - 1
};

// Exhaustive search over a in [1, N-1]; the first maximizer wins.
SearchResult search_korobov(std::int64_t n, std::size_t d, const SearchOptions& options = {});

struct ExactSearchLimits {
  std::int64_t max_n = 600;
  std::size_t max_d = 4;
};

// search_korobov with exact shortest vectors. Throws OracleInfeasible
// outside `limits`.
SearchResult exact_search(std::int64_t n, std::size_t d, const SearchOptions& options = {},
                          ExactSearchLimits limits = {});

}  // namespace latdesign
