#include <gtest/gtest.h>

#include <cmath>

#include "latdesign/errors.hpp"
#include "latdesign/korobov_search.hpp"

using namespace latdesign;

TEST(Score, N7A3) {
  const KorobovScore s = korobov_score(7, 2, 3);
  EXPECT_EQ(s.primal_norm_sq, 5);
  EXPECT_EQ(s.dual_norm_sq, 5);
  EXPECT_NEAR(s.score, 5.0 / 7.0, 1e-15);
  EXPECT_NEAR(s.lambda1_primal, std::sqrt(5.0) / 7.0, 1e-15);
}

TEST(Score, ArgumentChecks) {
  EXPECT_THROW(korobov_score(7, 2, 0), std::invalid_argument);
  EXPECT_THROW(korobov_score(7, 2, 7), std::invalid_argument);
  EXPECT_THROW(search_korobov(2, 2), std::invalid_argument);
  EXPECT_THROW(search_korobov(7, 1), std::invalid_argument);
}

TEST(Search, SmallTableRows) {
  // Reference choices; equality is on scores because exact ties are common.
  struct Row {
    std::int64_t n;
    std::size_t d;
    std::int64_t a;
  };
  for (const Row& r : {Row{7, 3, 2}, Row{13, 2, 8}, Row{127, 3, 102}, Row{31, 2, 12}}) {
    const SearchResult s = search_korobov(r.n, r.d);
    EXPECT_EQ(s.primal_norm_sq * s.dual_norm_sq, korobov_score(r.n, r.d, r.a).key())
        << "N=" << r.n << " d=" << r.d;
  }
}

TEST(Search, N7D2TieKeepsFirst) {
  const SearchResult s = search_korobov(7, 2);
  EXPECT_EQ(s.a_star, 2);
  EXPECT_EQ(korobov_score(7, 2, 2).key(), korobov_score(7, 2, 3).key());
}

TEST(Search, ThreadCountDoesNotMatter) {
  SearchOptions one, many;
  many.threads = 5;
  one.keep_table = many.keep_table = true;
  const SearchResult a = search_korobov(1021, 3, one);
  const SearchResult b = search_korobov(1021, 3, many);
  EXPECT_EQ(a.a_star, b.a_star);
  EXPECT_EQ(*a.per_a_scores, *b.per_a_scores);
}

TEST(Search, ExactArithmeticSameResult) {
  SearchOptions exact;
  exact.arithmetic = LllArithmetic::kExact;
  EXPECT_EQ(search_korobov(251, 4).a_star, search_korobov(251, 4, exact).a_star);
}

TEST(Search, NonPrimeWarns) {
  EXPECT_TRUE(search_korobov(100, 2).warning.has_value());
  EXPECT_FALSE(search_korobov(101, 2).warning.has_value());
}

TEST(Search, ExactOracleDominatesLllScores) {
  const SearchResult e = exact_search(127, 3);
  SearchOptions opt;
  opt.keep_table = true;
  const SearchResult l = search_korobov(127, 3, opt);
  EXPECT_GE(e.score, exact_korobov_score(127, 3, l.a_star).score);
  EXPECT_THROW(exact_search(1021, 2), OracleInfeasible);
  EXPECT_THROW(exact_search(127, 5), OracleInfeasible);
}

TEST(Search, LllScoreNeverBelowExact) {
  for (std::int64_t a = 1; a < 61; ++a) {
    const auto l = korobov_score(61, 4, a);
    const auto e = exact_korobov_score(61, 4, a);
    EXPECT_GE(l.primal_norm_sq, e.primal_norm_sq);
    EXPECT_GE(l.dual_norm_sq, e.dual_norm_sq);
  }
}

TEST(Ladders, PresetsAndLists) {
  const auto p = primes_below_pow2();
  ASSERT_EQ(p.size(), 18u);
  EXPECT_EQ(p.front(), 3);
  EXPECT_EQ(p[2], 13);
  EXPECT_EQ(p.back(), 524287);
  EXPECT_EQ(parse_ladder("pow2").front(), 4);
  EXPECT_EQ(parse_ladder("pow2").back(), 65536);
  EXPECT_EQ(parse_ladder("5,7,11"), (std::vector<std::int64_t>{5, 7, 11}));
  EXPECT_THROW(parse_ladder("5,x"), std::invalid_argument);
  EXPECT_THROW(parse_ladder(""), std::invalid_argument);
}

TEST(Primes, IsPrime) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(524287));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(262143));
}
