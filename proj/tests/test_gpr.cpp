#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "latdesign/baselines.hpp"
#include "latdesign/errors.hpp"
#include "latdesign/gpr.hpp"
#include "latdesign/korobov_search.hpp"
#include "latdesign/rng.hpp"

using namespace latdesign;

namespace {

std::vector<double> values(const std::string& fn, const PointSet& x) {
  std::vector<double> y;
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(test_function(fn, x.point(i)));
  return y;
}

std::vector<double> noisy(const std::vector<double>& f, double sd, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> y = f;
  for (auto& v : y) v += sd * rng.normal();
  return y;
}

}  // namespace

TEST(Matern, Values) {
  const double x[2] = {0.2, 0.7}, y[2] = {0.8, 0.1};
  EXPECT_EQ(matern25(x, x, {0.3, 2.5}), 2.5);
  EXPECT_NEAR(matern25_r(1.0, {1.0, 1.0}), 0.52399410883182031059, 1e-15);
  EXPECT_THROW(matern25(x, y, {0.0, 1.0}), std::invalid_argument);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double a[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double b[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    EXPECT_EQ(matern25(a, b, {0.4, 1.3}), matern25(b, a, {0.4, 1.3}));
  }
}

TEST(Lml, SinglePointClosedForm) {
  PointSet x;
  x.dim = 2;
  x.coords = {0.3, 0.3};
  const std::vector<double> y{0.0};
  const double jitter = 1e-10 * (1.0 + 0.0025);
  EXPECT_NEAR(log_marginal_likelihood(x, y, {0.5, 1.0}, 0.05),
              -0.5 * std::log(2 * std::numbers::pi * (1.0 + 0.0025 + jitter)), 1e-14);
}

TEST(Lml, MatchesDenseOracleAndConstantShift) {
  Rng rng(8);
  for (std::size_t n : {8, 32, 64}) {
    const PointSet x = uniform_random(n, 2, rng.next_u64());
    std::vector<double> y(n);
    for (auto& v : y) v = rng.normal();
    const Matern25Params p{0.3, 1.5};
    const GprModel m = fit_fixed(x, y, 0.05, p);
    EXPECT_NEAR(m.lml, log_marginal_likelihood_dense(x, y, p, 0.05, m.jitter), 1e-8);

    // LML(y + c) - LML(y) = -c 1'K^{-1}y - c^2/2 1'K^{-1}1, with a dense LU solve.
    const double c = 0.7;
    std::vector<double> yc = y;
    for (auto& v : yc) v += c;
    Eigen::MatrixXd k = kernel_matrix(x, p);
    k.diagonal().array() += 0.0025 + m.jitter;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    const Eigen::VectorXd kinv1 = lu.solve(ones);
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(n));
    const double expect = -c * kinv1.dot(yv) - 0.5 * c * c * kinv1.sum();
    EXPECT_NEAR(log_marginal_likelihood(x, yc, p, 0.05) - m.lml, expect, 1e-8);
  }
}

TEST(Lml, GridTableMatchesCholesky) {
  const PointSet x = halton(40, 2);
  const auto y = noisy(values("franke", x), 0.05, 3);
  const GridEvaluator ev(x, HyperGrid::standard(), 0.05);
  const auto table = ev.lml_table(y);
  const HyperGrid g = HyperGrid::standard();
  for (std::size_t li = 0; li < g.length_scales.size(); li += 3) {
    for (std::size_t vi = 0; vi < g.variances.size(); ++vi) {
      const double chol =
          log_marginal_likelihood(x, y, {g.length_scales[li], g.variances[vi]}, 0.05);
      EXPECT_NEAR(table[li * g.variances.size() + vi], chol, 1e-6 * std::abs(chol));
    }
  }
}

TEST(Fit, GridArgmaxAndDeterminism) {
  const PointSet x = generate_points(RankOneLattice::korobov(12, 127, 2));
  const auto y = noisy(values("franke", x), 0.05, 5);
  const GridEvaluator ev(x, HyperGrid::standard(), 0.05);
  const auto table = ev.lml_table(y);
  const GprModel m = ev.fit(y);
  const HyperGrid g = HyperGrid::standard();
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (g.length_scales[i / g.variances.size()] == m.params.length_scale &&
        g.variances[i % g.variances.size()] == m.params.variance) {
      chosen = i;
    }
  }
  for (std::size_t i = 0; i < table.size(); ++i) EXPECT_GE(table[chosen], table[i]);
  const GprModel m2 = fit_gpr(x, y, 0.05);
  EXPECT_EQ(m.params.length_scale, m2.params.length_scale);
  EXPECT_EQ(m.params.variance, m2.params.variance);
  EXPECT_EQ(m.weights, m2.weights);
}

TEST(Fit, ZeroTargetsPickSmallestVariance) {
  PointSet x;
  x.dim = 2;
  x.coords = {0.1, 0.1, 0.6, 0.8};
  const GprModel m = fit_gpr(x, std::vector<double>{0.0, 0.0}, 0.05);
  EXPECT_EQ(m.params.variance, 0.25);
}

TEST(Fit, FrankeKorobov127) {
  const std::int64_t a = search_korobov(127, 2).a_star;
  const PointSet x = generate_points(RankOneLattice::korobov(a, 127, 2));
  const auto y = noisy(values("franke", x), 0.05, 20240501);
  const GprModel m = fit_gpr(x, y, 0.05);
  const double err = l2_error(m, "franke", 2, QuadratureSpec::standard(2, 0));
  EXPECT_LT(err, 0.05);
  // Regression baseline from this implementation.
  EXPECT_NEAR(err, 0.026835152643990272, 1e-9);
}

TEST(Predict, InterpolatesWithoutNoise) {
  const PointSet x = generate_points(RankOneLattice::korobov(12, 61, 2));
  const auto y = values("gaussian_peak", x);
  const GprModel m = fit_fixed(x, y, 0.0, {0.2, 1.0});
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(predict_mean(m, x.point(i)), y[i], 1e-6);
  const double far[2] = {40.0, 40.0};
  EXPECT_LT(std::abs(predict_mean(m, far)), 1e-6);
}

TEST(Predict, LinearInTargets) {
  const PointSet x = halton(30, 2);
  const auto y = values("arctan", x);
  std::vector<double> y3 = y;
  for (auto& v : y3) v *= 3.0;
  const GprModel a = fit_fixed(x, y, 0.05, {0.3, 1.0});
  const GprModel b = fit_fixed(x, y3, 0.05, {0.3, 1.0});
  const double q[2] = {0.37, 0.81};
  EXPECT_NEAR(predict_mean(b, q), 3.0 * predict_mean(a, q), 1e-10);
}

TEST(Fit, IllConditioningReported) {
  const PointSet x = generate_points(RankOneLattice::korobov(3, 61, 2));
  const std::vector<double> y(61, 0.0);
  EXPECT_THROW(fit_fixed(x, y, 0.0, {1e6, 1.0}, {1e-22, 1e-21}), IllConditioned);
  EXPECT_THROW(fit_fixed(x, y, 0.0, {0.1, 1.0}, {0.0, 1e-4}), std::invalid_argument);
}

TEST(TestFunctions, Values) {
  const double c3[3] = {0.5, 0.5, 0.5};
  EXPECT_EQ(test_function("genz_gaussian", c3), 1.0);
  EXPECT_EQ(test_function("genz_continuous", c3), 1.0);
  const double q5[5] = {0.25, 0.25, 0.25, 0.25, 0.25};
  EXPECT_NEAR(test_function("pairwise_trig", q5), 1.0, 1e-15);
  const double h[2] = {0.5, 0.5};
  // 20-digit reference evaluation
  EXPECT_NEAR(test_function("franke", h), 0.325762089280684, 1e-12);
  EXPECT_NEAR(test_function("oscillatory", h), 0.0, 1e-15);
  const double corner[2] = {1.0, 1.0};
  EXPECT_NEAR(test_function("arctan", corner), std::atan(6.0) / std::atan(2 * (std::sqrt(10.0) + 1)),
              1e-15);
  EXPECT_THROW(test_function("franke", c3), std::invalid_argument);
  EXPECT_THROW(test_function("nope", h), std::invalid_argument);
  EXPECT_EQ(test_function_names().size(), 7u);
}

TEST(Quadrature, GaussLegendre) {
  const auto r1 = gauss_legendre(1);
  EXPECT_EQ(r1.nodes[0], 0.5);
  EXPECT_EQ(r1.weights[0], 1.0);
  const auto r2 = gauss_legendre(2);
  double s = 0.0;
  for (std::size_t i = 0; i < 2; ++i) s += r2.weights[i] * std::pow(r2.nodes[i], 3);
  EXPECT_NEAR(s, 0.25, 1e-14);
  const auto r50 = gauss_legendre(50);
  double t = 0.0, w = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    t += r50.weights[i] * std::sin(std::numbers::pi * r50.nodes[i]);
    w += r50.weights[i];
  }
  EXPECT_NEAR(t, 2.0 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(w, 1.0, 1e-14);
  for (std::size_t i = 1; i < 50; ++i) EXPECT_LT(r50.nodes[i - 1], r50.nodes[i]);
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
  EXPECT_THROW(gauss_legendre(201), std::invalid_argument);
}

TEST(Quadrature, L2ErrorBasics) {
  const auto gl = QuadratureSpec::standard(2, 0);
  const auto exact = [](std::span<const double> x) { return test_function("franke", x); };
  EXPECT_NEAR(l2_error(exact, "franke", 2, gl), 0.0, 1e-10);
  const auto shifted = [](std::span<const double> x) { return test_function("franke", x) - 1.0; };
  EXPECT_NEAR(l2_error(shifted, "franke", 2, gl), 1.0, 1e-12);
  const auto mc = QuadratureSpec::standard(3, 9);
  EXPECT_EQ(mc.kind, QuadratureSpec::Kind::kMonteCarlo);
  EXPECT_EQ(mc.samples, 10000u);
}

TEST(Quadrature, MonteCarloAgreesWithGaussLegendre) {
  const PointSet x = halton(100, 2);
  const GprModel m = fit_gpr(x, noisy(values("franke", x), 0.05, 2), 0.05);
  const double gl = l2_error(m, "franke", 2, QuadratureSpec::standard(2, 0));
  QuadratureSpec mcs;
  mcs.kind = QuadratureSpec::Kind::kMonteCarlo;
  mcs.seed = 77;
  const CubaturePoints c = cubature(2, mcs);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    const double e = test_function("franke", c.points.point(i)) - predict_mean(m, c.points.point(i));
    s1 += e * e;
    s2 += e * e * e * e;
  }
  const double n = static_cast<double>(c.weights.size());
  const double mean = s1 / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, gl * gl, 3 * se);
  EXPECT_NEAR(std::sqrt(mean), l2_error(m, "franke", 2, mcs), 1e-12);
}

TEST(Config, ParsesKeyValueFile) {
  std::istringstream is(
      "# comment\n"
      "designs = korobov, halton\n"
      "d = 3\n"
      "n = 61,127\n"
      "function = genz_gaussian\n"
      "trials = 4\n"
      "noise_sd = 0.1\n"
      "seed = 99\n"
      "quadrature = mc:500\n"
      "variances = 0.5,1\n");
  const BenchmarkConfig c = parse_benchmark_config(is);
  EXPECT_EQ(c.designs, (std::vector<std::string>{"korobov", "halton"}));
  EXPECT_EQ(c.d, 3u);
  EXPECT_EQ(c.n_ladder, (std::vector<std::int64_t>{61, 127}));
  EXPECT_EQ(c.trials, 4u);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.quadrature->samples, 500u);
  EXPECT_EQ(c.grid.variances.size(), 2u);
  EXPECT_EQ(c.grid.length_scales.size(), 13u);

  std::istringstream bad_key("colour = blue\n");
  EXPECT_THROW(parse_benchmark_config(bad_key), std::invalid_argument);
  std::istringstream bad_dim("n = 61\nfunction = franke\nd = 3\n");
  EXPECT_THROW(parse_benchmark_config(bad_dim), std::invalid_argument);
  std::istringstream bad_trials("n = 61\ntrials = 0\n");
  EXPECT_THROW(parse_benchmark_config(bad_trials), std::invalid_argument);
}

TEST(Benchmark, DeterministicAndThreadIndependent) {
  BenchmarkConfig cfg;
  cfg.designs = {"korobov", "random", "sobol"};
  cfg.n_ladder = {64};
  cfg.trials = 3;
  cfg.master_seed = 5;
  QuadratureSpec q;
  q.nodes = 20;
  cfg.quadrature = q;
  const auto a = run_benchmark(cfg);
  cfg.threads = 3;
  const auto b = run_benchmark(cfg);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].errors, b[i].errors);
    EXPECT_EQ(a[i].skipped, 0u);
    EXPECT_GT(a[i].min_kernel_eigenvalue, 0.0);
  }
  std::ostringstream os;
  write_benchmark_header(os);
  write_benchmark_row(os, a[0]);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "design,N,d,function,trials,mean_l2,sd_l2,skipped");
}

TEST(Benchmark, SingleTrialHasZeroSd) {
  BenchmarkConfig cfg;
  cfg.designs = {"halton"};
  cfg.n_ladder = {50};
  cfg.trials = 1;
  const auto r = run_benchmark(cfg);
  EXPECT_EQ(r[0].sd_l2, 0.0);
  EXPECT_EQ(r[0].mean_l2, run_benchmark(cfg)[0].mean_l2);
}

TEST(Benchmark, ExplicitDesignNeedsSequenceTerm) {
  BenchmarkConfig cfg;
  cfg.designs = {"explicit"};
  cfg.d = 5;
  cfg.function = "pairwise_trig";
  cfg.n_ladder = {138};
  EXPECT_EQ(benchmark_design("explicit", 138, 5, cfg).size(), 138u);
  EXPECT_THROW(benchmark_design("explicit", 139, 5, cfg), std::invalid_argument);
}
