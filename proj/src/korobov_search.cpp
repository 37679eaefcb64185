#include "latdesign/korobov_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "latdesign/errors.hpp"
#include "latdesign/parallel.hpp"

namespace latdesign {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_below_pow2() {
  std::vector<std::int64_t> out;
  for (int k = 2; k <= 19; ++k) {
    std::int64_t n = (std::int64_t{1} << k) - 1;
    while (!is_prime(n)) --n;
    out.push_back(n);
  }
  return out;
}

std::vector<std::int64_t> parse_ladder(const std::string& text) {
  if (text == "primes-pow2") return primes_below_pow2();
  std::vector<std::int64_t> out;
  if (text == "pow2") {
    for (int k = 2; k <= 16; ++k) out.push_back(std::int64_t{1} << k);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v < 1) {
      throw std::invalid_argument("invalid N ladder entry '" + item + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

namespace {

KorobovScore finish(std::int64_t n, std::int64_t a, std::int64_t primal_sq,
                    std::int64_t dual_sq) {
  KorobovScore s;
  s.a = a;
  s.primal_norm_sq = primal_sq;
  s.dual_norm_sq = dual_sq;
  s.lambda1_primal = std::sqrt(static_cast<double>(primal_sq)) / static_cast<double>(n);
  s.lambda1_dual = std::sqrt(static_cast<double>(dual_sq));
  s.score = std::sqrt(static_cast<long double>(s.key())) / static_cast<double>(n);
  return s;
}

void check_args(std::int64_t n, std::size_t d, std::int64_t a) {
  if (n < 2) throw std::invalid_argument("korobov score: N must be >= 2");
  if (d < 1) throw std::invalid_argument("korobov score: d must be >= 1");
  if (a < 1 || a > n - 1) throw std::invalid_argument("korobov score: a must lie in [1, N-1]");
}

using Scorer = std::function<KorobovScore(std::int64_t)>;

SearchResult run_search(std::int64_t n, std::size_t d, const SearchOptions& options,
                        const Scorer& scorer) {
  const std::int64_t count = n - 1;
  const unsigned threads = resolve_threads(options.threads);
  const std::int64_t chunks = std::min<std::int64_t>(count, static_cast<std::int64_t>(threads) * 8);
  std::vector<KorobovScore> best(static_cast<std::size_t>(chunks));
  std::vector<double> table;
  if (options.keep_table) table.assign(static_cast<std::size_t>(count), 0.0);

  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    const std::int64_t lo = 1 + count * static_cast<std::int64_t>(c) / chunks;
    const std::int64_t hi = 1 + count * static_cast<std::int64_t>(c + 1) / chunks;
    KorobovScore local;
    bool have = false;
    for (std::int64_t a = lo; a < hi; ++a) {
      const KorobovScore s = scorer(a);
      if (options.keep_table) table[static_cast<std::size_t>(a - 1)] = s.score;
      if (!have || s.key() > local.key()) {
        local = s;
        have = true;
      }
    }
    best[c] = local;
  });

  // Chunks are in increasing a, so a strict comparison keeps the first maximizer.
  KorobovScore top = best.front();
  for (std::size_t c = 1; c < best.size(); ++c) {
    if (best[c].key() > top.key()) top = best[c];
  }

  SearchResult r;
  r.n = n;
  r.d = d;
  r.a_star = top.a;
  r.score = top.score;
  r.lambda1_primal = top.lambda1_primal;
  r.lambda1_dual = top.lambda1_dual;
  r.primal_norm_sq = top.primal_norm_sq;
  r.dual_norm_sq = top.dual_norm_sq;
  if (!is_prime(n)) {
    r.warning = "N = " + std::to_string(n) + " is not prime; quasi-uniformity is not guaranteed";
  }
  if (options.keep_table) r.per_a_scores = std::move(table);
  return r;
}

}  // namespace

KorobovScore korobov_score(std::int64_t n, std::size_t d, std::int64_t a, Delta delta,
                           LllArithmetic arithmetic) {
  check_args(n, d, a);
  const RankOneLattice lat = RankOneLattice::korobov(a, n, d);
  const auto primal = shortest_basis_vector(lll_reduce(primal_basis(lat), delta, arithmetic));
  const auto dual = shortest_basis_vector(lll_reduce(dual_basis(lat), delta, arithmetic));
  return finish(n, a, primal.norm_sq, dual.norm_sq);
}

KorobovScore exact_korobov_score(std::int64_t n, std::size_t d, std::int64_t a,
                                 EnumerationLimits limits) {
  check_args(n, d, a);
  const RankOneLattice lat = RankOneLattice::korobov(a, n, d);
  const auto primal = exact_shortest(primal_basis(lat), limits);
  const auto dual = exact_shortest(dual_basis(lat), limits);
  return finish(n, a, primal.norm_sq, dual.norm_sq);
}

SearchResult search_korobov(std::int64_t n, std::size_t d, const SearchOptions& options) {
  if (n < 3) throw std::invalid_argument("search_korobov: N must be >= 3");
  if (d < 2) throw std::invalid_argument("search_korobov: d must be >= 2");
  return run_search(n, d, options, [&](std::int64_t a) {
    return korobov_score(n, d, a, options.delta, options.arithmetic);
  });
}

SearchResult exact_search(std::int64_t n, std::size_t d, const SearchOptions& options,
                          ExactSearchLimits limits) {
  if (n < 3) throw std::invalid_argument("exact_search: N must be >= 3");
  if (d < 2) throw std::invalid_argument("exact_search: d must be >= 2");
  if (n > limits.max_n || d > limits.max_d) {
    throw OracleInfeasible("exact_search: (N, d) = (" + std::to_string(n) + ", " +
                           std::to_string(d) + ") exceeds the enumeration guard");
  }
  return run_search(n, d, options, [&](std::int64_t a) { return exact_korobov_score(n, d, a); });
}

}  // namespace latdesign
