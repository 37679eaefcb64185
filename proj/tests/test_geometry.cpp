#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "latdesign/baselines.hpp"
#include "latdesign/geometry_metrics.hpp"
#include "latdesign/korobov_search.hpp"
#include "latdesign/rng.hpp"

using namespace latdesign;

namespace {

PointSet make(std::size_t d, std::vector<double> coords) {
  PointSet ps;
  ps.dim = d;
  ps.coords = std::move(coords);
  return ps;
}

}  // namespace

TEST(Separation, TwoPoints) {
  const auto r = separation_radius(make(2, {0, 0, 0.5, 0.5}));
  EXPECT_NEAR(r.q, std::sqrt(0.5) / 2, 1e-15);
  EXPECT_FALSE(r.duplicates);
}

TEST(Separation, N5Lattice) {
  const RankOneLattice lat(5, {1, 3});
  const auto r = separation_radius(generate_points(lat));
  EXPECT_NEAR(r.q, std::sqrt(0.2) / 2, 1e-15);
  EXPECT_NEAR(r.q, lattice_lambda1(lat).primal / 2, 1e-15);
}

TEST(Separation, DuplicatesFlagged) {
  const auto r = separation_radius(make(1, {0.3, 0.1, 0.3}));
  EXPECT_EQ(r.q, 0.0);
  EXPECT_TRUE(r.duplicates);
  EXPECT_THROW(separation_radius(make(1, {0.3})), std::invalid_argument);
}

TEST(Separation, ProjectionCollapse) {
  const RankOneLattice lat(138, {17, 36, 57, 81, 108});
  const auto r = separation_radius(project(generate_points(lat), 1, 4));
  EXPECT_TRUE(r.duplicates);
  const auto diag = projection_diagnostic(lat, 1, 4);
  EXPECT_EQ(diag.gcd, 6);
  EXPECT_EQ(diag.distinct, 23);
  EXPECT_EQ(projection_diagnostic(lat, 0, 1).distinct, 138);
}

TEST(Separation, MethodsAgreeExactly) {
  Rng rng(99);
  for (int it = 0; it < 100; ++it) {
    const std::size_t d = 1 + rng.next_u64() % 4;
    const std::size_t n = 2 + rng.next_u64() % 400;
    PointSet ps = uniform_random(n, d, rng.next_u64());
    if (it % 10 == 0) {
      // quantized coordinates produce ties and duplicates
      for (auto& x : ps.coords) x = std::floor(x * 8) / 8;
    }
    const auto b = separation_radius(ps, SeparationMethod::kBruteForce);
    EXPECT_EQ(b.min_dist_sq, separation_radius(ps, SeparationMethod::kGrid).min_dist_sq);
    EXPECT_EQ(b.min_dist_sq, separation_radius(ps, SeparationMethod::kTree).min_dist_sq);
    EXPECT_EQ(b.min_dist_sq, separation_radius(ps, SeparationMethod::kTree, 3).min_dist_sq);
  }
}

TEST(Separation, LatticeBoundAndClusteredBaselines) {
  for (std::int64_t n : {61, 251, 1021}) {
    for (std::size_t d : {2, 3, 4}) {
      const auto lat = RankOneLattice::korobov(search_korobov(n, d).a_star, n, d);
      EXPECT_GE(separation_radius(generate_points(lat)).q,
                lattice_lambda1(lat).primal / 2 * (1 - 1e-12));
    }
  }
  // q * sqrt(N) for random sets collapses between 64 and 65536 points.
  auto stat = [](std::size_t n, std::uint64_t seed) {
    return separation_radius(uniform_random(n, 2, seed)).q * std::sqrt(static_cast<double>(n));
  };
  EXPECT_GT(stat(64, 1) / stat(65536, 1), 10.0);
}

TEST(Lambda, N7Example) {
  const auto m = lattice_lambda1(RankOneLattice(7, {1, 3}));
  EXPECT_NEAR(m.primal, std::sqrt(5.0) / 7, 1e-15);
  EXPECT_NEAR(m.dual, std::sqrt(5.0), 1e-15);
  EXPECT_FALSE(m.approximate);
  EXPECT_NEAR(mesh_ratio_bound(RankOneLattice(7, {1, 3})).value, 14 * std::sqrt(2.0) / 5, 1e-12);
  EXPECT_NEAR(spectral_test(RankOneLattice(7, {1, 3})), 1 / std::sqrt(5.0), 1e-15);
}

TEST(Lambda, NOne) {
  const RankOneLattice lat(1, {0, 0});
  const auto m = lattice_lambda1(lat);
  EXPECT_EQ(m.primal, 1.0);
  EXPECT_EQ(m.dual, 1.0);
  EXPECT_NEAR(mesh_ratio_bound(lat).value, 2 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(spectral_test(lat), 1.0);
}

TEST(Lambda, ApproximateFlagBeyondGuard) {
  EnumerationLimits lim;
  lim.max_dim = 3;
  const auto m = lattice_lambda1(RankOneLattice::korobov(5, 101, 4), lim);
  EXPECT_TRUE(m.approximate);
  EXPECT_GT(m.primal, 0.0);
}

TEST(Lambda, TransferenceAndMinkowski) {
  Rng rng(17);
  for (int it = 0; it < 100; ++it) {
    const std::int64_t n = 5 + static_cast<std::int64_t>(rng.next_u64() % 200);
    const std::size_t d = 2 + rng.next_u64() % 3;
    std::vector<std::int64_t> z(d);
    z[0] = 1;
    for (std::size_t k = 1; k < d; ++k) z[k] = static_cast<std::int64_t>(rng.next_u64() % n);
    const RankOneLattice lat(n, z);
    const auto m = lattice_lambda1(lat);
    EXPECT_LE(m.primal * m.dual, static_cast<double>(d) * (1 + 1e-12));
    EXPECT_LE(std::pow(m.primal, static_cast<double>(d)),
              minkowski_constant(d) / static_cast<double>(n) * (1 + 1e-12));
    // lower transference inequality against the longest reduced dual column
    const auto red = lll_reduce(dual_basis(lat));
    double longest = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      longest = std::max(longest, std::sqrt(static_cast<double>(norm_sq(red.basis.column(j)))));
    }
    EXPECT_GE(m.primal * longest, 1.0 - 1e-12);
  }
}

TEST(Minkowski, KnownValues) {
  EXPECT_NEAR(minkowski_constant(2), 4 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(minkowski_constant(1), 1.0, 1e-15);
}

TEST(Spectral, DecreasesAlongLadder) {
  std::vector<double> logn, logs;
  for (std::int64_t n : {61, 127, 251, 509, 1021, 2039, 4093}) {
    const auto lat = RankOneLattice::korobov(search_korobov(n, 3).a_star, n, 3);
    logn.push_back(std::log(static_cast<double>(n)));
    logs.push_back(std::log(spectral_test(lat)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    mx += logn[i];
    my += logs[i];
  }
  mx /= logn.size();
  my /= logn.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sxy += (logn[i] - mx) * (logs[i] - my);
    sxx += (logn[i] - mx) * (logn[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -1.0 / 3.0, 0.05);
}

TEST(Covering, SingleOriginApproachesDiagonal) {
  const PointSet one = make(2, {0, 0});
  EXPECT_GE(covering_radius_estimate(one, 4096, 1).value, 1.40);
  EXPECT_NEAR(covering_radius_estimate(one, 4, 1).value, std::sqrt(2.0), 1e-15);
}

TEST(Covering, N5AgainstFineGrid) {
  const PointSet ps = generate_points(RankOneLattice(5, {1, 3}));
  double oracle = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    for (int j = 0; j <= 2000; ++j) {
      const double x = i / 2000.0, y = j / 2000.0;
      double best = 1e9;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const double dx = x - ps.point(k)[0], dy = y - ps.point(k)[1];
        best = std::min(best, dx * dx + dy * dy);
      }
      oracle = std::max(oracle, best);
    }
  }
  oracle = std::sqrt(oracle);
  const double est = covering_radius_estimate(ps, 100000, 3).value;
  EXPECT_NEAR(est, oracle, 0.05 * oracle);
}

TEST(Covering, MonotoneInProbes) {
  const PointSet ps = halton(200, 3);
  double prev = 0.0;
  for (std::size_t p : {1, 8, 9, 50, 500, 5000}) {
    const double v = covering_radius_estimate(ps, p, 11).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(covering_radius_estimate(ps, 5000, 11, 1).value,
            covering_radius_estimate(ps, 5000, 11, 4).value);
}

TEST(Covering, ProbesArePrefixes) {
  const PointSet a = covering_probes(3, 40, 9), b = covering_probes(3, 400, 9);
  for (std::size_t i = 0; i < a.coords.size(); ++i) EXPECT_EQ(a.coords[i], b.coords[i]);
}

TEST(Metrics, RowAndDeterminism) {
  const auto lat = RankOneLattice::korobov(798, 1021, 2);
  MetricsOptions opt;
  opt.covering_probes = 2000;
  opt.seed = 4;
  const DesignMetrics m = compute_metrics(lat, opt);
  EXPECT_GT(m.q, 0.0);
  EXPECT_GT(m.mesh_ratio_bound, 0.0);
  EXPECT_NEAR(m.spectral, 1.0 / m.lambda1_dual, 1e-15);
  EXPECT_TRUE(m.covering_estimate.has_value());
  std::ostringstream a, b;
  write_metrics_header(a);
  write_metrics_row(a, m);
  write_metrics_header(b);
  write_metrics_row(b, compute_metrics(lat, opt));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "N,d,q,q_times_N_pow,lambda1,lambda1_dual,bound,spectral,covering_est,flags");
}

TEST(Metrics, DuplicateFlagInRow) {
  DesignMetrics m;
  m.n = 4;
  m.d = 2;
  m.duplicates = true;
  m.approximate = true;
  std::ostringstream os;
  write_metrics_row(os, m);
  EXPECT_NE(os.str().find(",,duplicates;approximate"), std::string::npos);
}
