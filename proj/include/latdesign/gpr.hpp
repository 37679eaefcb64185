#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latdesign/lattice_core.hpp"

namespace latdesign {

struct Matern25Params {
  double length_scale = 1.0;
  double variance = 1.0;
};

double matern25_r(double r, const Matern25Params& p);
double matern25(std::span<const double> x, std::span<const double> y, const Matern25Params& p);

struct HyperGrid {
  std::vector<double> length_scales;
  std::vector<double> variances;

  // l = 0.05 * 2^{k/2}, k = 0..12; variance in {0.25, 0.5, 1, 2, 4}.
  static HyperGrid standard();
  std::size_t size() const { return length_scales.size() * variances.size(); }
};

// Diagonal jitter ladder: 1e-10 * trace / N, times 10 per step, at most
// 1e-4 * trace / N.
struct JitterLadder {
  double start_rel = 1e-10;
  double max_rel = 1e-4;
};

Eigen::MatrixXd kernel_matrix(const PointSet& x, const Matern25Params& p);

struct GprModel {
  PointSet x;
  Eigen::VectorXd y;
  double noise_sd = 0.0;
  Matern25Params params;
  double jitter = 0.0;
  Eigen::MatrixXd factor;  // lower Cholesky factor of K + (noise^2 + jitter) I
  Eigen::VectorXd weights;
  double lml = 0.0;
  std::optional<double> min_eigenvalue;  // of the jittered matrix, when known
};

// Cholesky fit at fixed hyperparameters with jitter escalation.
// Throws IllConditioned when the ladder is exhausted.
GprModel fit_fixed(const PointSet& x, std::span<const double> y, double noise_sd,
                   const Matern25Params& p, JitterLadder ladder = {});

double log_marginal_likelihood(const PointSet& x, std::span<const double> y,
                               const Matern25Params& p, double noise_sd,
                               JitterLadder ladder = {});

// Dense LU reference for the same quantity at an explicit jitter.
double log_marginal_likelihood_dense(const PointSet& x, std::span<const double> y,
                                     const Matern25Params& p, double noise_sd, double jitter);

// Evaluates the LML over a hyper-grid for one design. The eigendecomposition of
// each correlation matrix is computed once and reused for every variance and
// every target vector.
class GridEvaluator {
 public:
  GridEvaluator(const PointSet& x, HyperGrid grid, double noise_sd, JitterLadder ladder = {});

  const HyperGrid& grid() const { return grid_; }

  // Row-major over (length scale, variance); NaN marks an infeasible point.
  std::vector<double> lml_table(std::span<const double> y) const;

  // Grid argmax (first on ties), refit by Cholesky.
  GprModel fit(std::span<const double> y) const;

  // Smallest eigenvalue of the jittered kernel matrix at a grid point.
  double min_eigenvalue(std::size_t li, std::size_t vi) const;

 private:
  double jitter_for(std::size_t li, std::size_t vi) const;

  PointSet x_;
  HyperGrid grid_;
  double noise_sd_;
  JitterLadder ladder_;
  std::vector<Eigen::VectorXd> evals_;
  std::vector<Eigen::MatrixXd> evecs_;
};

GprModel fit_gpr(const PointSet& x, std::span<const double> y, double noise_sd,
                 const HyperGrid& grid = HyperGrid::standard());

double predict_mean(const GprModel& m, std::span<const double> x);

// Registered names: franke, arctan, gaussian_peak, oscillatory (d = 2);
// genz_continuous, genz_gaussian (d = 3); pairwise_trig (d >= 2).
double test_function(const std::string& name, std::span<const double> x);
bool test_function_accepts(const std::string& name, std::size_t d);
std::vector<std::string> test_function_names();

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [0, 1], 1 <= n <= 200.
QuadratureRule gauss_legendre(std::size_t n);

struct QuadratureSpec {
  enum class Kind { kGaussLegendre, kMonteCarlo };
  Kind kind = Kind::kGaussLegendre;
  std::size_t nodes = 50;       // per dimension
  std::size_t samples = 10000;
  std::uint64_t seed = 0;

  // Tensor GL(50) for d = 2, Monte Carlo with 10000 samples otherwise.
  static QuadratureSpec standard(std::size_t d, std::uint64_t seed);
};

// Integration points and weights for [0,1]^d.
struct CubaturePoints {
  PointSet points;
  std::vector<double> weights;
};

CubaturePoints cubature(std::size_t d, const QuadratureSpec& spec);

// sqrt of the integral of (f - g)^2 over [0,1]^d.
double l2_error(const std::function<double(std::span<const double>)>& g,
                const std::string& name, std::size_t d, const QuadratureSpec& spec);
double l2_error(const GprModel& m, const std::string& name, std::size_t d,
                const QuadratureSpec& spec);

struct BenchmarkConfig {
  std::vector<std::string> designs{"korobov", "random"};
  std::size_t d = 2;
  std::vector<std::int64_t> n_ladder;
  std::string function = "franke";
  std::size_t trials = 100;
  double noise_sd = 0.05;
  HyperGrid grid = HyperGrid::standard();
  std::optional<QuadratureSpec> quadrature;  // default by dimension
  std::uint64_t master_seed = 0;
  std::int64_t explicit_p = 2;
  unsigned threads = 1;

  void validate() const;
};

// key=value lines; '#' starts a comment.
BenchmarkConfig parse_benchmark_config(std::istream& is);

struct BenchmarkRow {
  std::string design;
  std::int64_t n = 0;
  std::size_t d = 0;
  std::string function;
  std::size_t trials = 0;
  double mean_l2 = 0.0;
  double sd_l2 = 0.0;
  std::size_t skipped = 0;
  std::vector<double> errors;           // per completed trial, by trial index
  double min_kernel_eigenvalue = 0.0;   // over all fits of this row
};

// Design points used by the benchmark for (design, N, d).
PointSet benchmark_design(const std::string& design, std::int64_t n, std::size_t d,
                          const BenchmarkConfig& cfg);

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg);

void write_benchmark_header(std::ostream& os);
void write_benchmark_row(std::ostream& os, const BenchmarkRow& r);

}  // namespace latdesign
