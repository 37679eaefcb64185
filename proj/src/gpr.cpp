#include "latdesign/gpr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "latdesign/baselines.hpp"
#include "latdesign/errors.hpp"
#include "latdesign/korobov_search.hpp"
#include "latdesign/kronecker.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/rng.hpp"

namespace latdesign {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

void check_ladder(const JitterLadder& l) {
  if (!(l.start_rel > 0.0) || !(l.max_rel >= l.start_rel)) {
    throw std::invalid_argument("jitter ladder needs 0 < start <= max");
  }
}

void check_params(const Matern25Params& p) {
  if (!(p.length_scale > 0.0) || !(p.variance > 0.0) || !std::isfinite(p.length_scale) ||
      !std::isfinite(p.variance)) {
    throw std::invalid_argument("Matern parameters must be positive and finite");
  }
}

Eigen::VectorXd to_vector(std::span<const double> y) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) v(static_cast<Eigen::Index>(i)) = y[i];
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_commas(s)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

double matern25_r(double r, const Matern25Params& p) {
  const double s = std::sqrt(5.0) * r / p.length_scale;
  return p.variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double matern25(std::span<const double> x, std::span<const double> y, const Matern25Params& p) {
  check_params(p);
  if (x.size() != y.size()) throw std::invalid_argument("matern25: dimension mismatch");
  return matern25_r(dist(x, y), p);
}

HyperGrid HyperGrid::standard() {
  HyperGrid g;
  for (int k = 0; k <= 12; ++k) g.length_scales.push_back(0.05 * std::pow(2.0, k / 2.0));
  g.variances = {0.25, 0.5, 1.0, 2.0, 4.0};
  return g;
}

Eigen::MatrixXd kernel_matrix(const PointSet& x, const Matern25Params& p) {
  check_params(p);
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = p.variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = matern25_r(dist(x.point(static_cast<std::size_t>(i)),
                                       x.point(static_cast<std::size_t>(j))),
                                  p);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

GprModel fit_fixed(const PointSet& x, std::span<const double> y, double noise_sd,
                   const Matern25Params& p, JitterLadder ladder) {
  if (x.size() == 0 || x.size() != y.size()) {
    throw std::invalid_argument("fit: need one target per training point");
  }
  check_ladder(ladder);
  const Eigen::MatrixXd k = kernel_matrix(x, p);
  const double noise_var = noise_sd * noise_sd;
  const double base = p.variance + noise_var;
  const auto n = k.rows();
  GprModel m;
  m.x = x;
  m.y = to_vector(y);
  m.noise_sd = noise_sd;
  m.params = p;
  for (double rel = ladder.start_rel; rel <= ladder.max_rel * (1.0 + 1e-9); rel *= 10.0) {
    const double jitter = rel * base;
    Eigen::MatrixXd a = k;
    a.diagonal().array() += noise_var + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) continue;
    m.jitter = jitter;
    m.factor = llt.matrixL();
    m.weights = llt.solve(m.y);
    const double logdet = 2.0 * m.factor.diagonal().array().log().sum();
    m.lml = -0.5 * m.y.dot(m.weights) - 0.5 * logdet - 0.5 * static_cast<double>(n) * kLog2Pi;
    return m;
  }
  throw IllConditioned("kernel matrix is not positive definite after maximal jitter");
}

double log_marginal_likelihood(const PointSet& x, std::span<const double> y,
                               const Matern25Params& p, double noise_sd, JitterLadder ladder) {
  return fit_fixed(x, y, noise_sd, p, ladder).lml;
}

double log_marginal_likelihood_dense(const PointSet& x, std::span<const double> y,
                                     const Matern25Params& p, double noise_sd, double jitter) {
  Eigen::MatrixXd a = kernel_matrix(x, p);
  a.diagonal().array() += noise_sd * noise_sd + jitter;
  const Eigen::VectorXd v = to_vector(y);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd w = lu.solve(v);
  const double logdet = lu.matrixLU().diagonal().array().abs().log().sum();
  return -0.5 * v.dot(w) - 0.5 * logdet - 0.5 * static_cast<double>(a.rows()) * kLog2Pi;
}

GridEvaluator::GridEvaluator(const PointSet& x, HyperGrid grid, double noise_sd,
                             JitterLadder ladder)
    : x_(x), grid_(std::move(grid)), noise_sd_(noise_sd), ladder_(ladder) {
  if (grid_.size() == 0) throw std::invalid_argument("hyper-grid is empty");
  check_ladder(ladder_);
  for (double l : grid_.length_scales) {
    const Eigen::MatrixXd r = kernel_matrix(x_, {l, 1.0});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    evals_.push_back(es.eigenvalues());
    evecs_.push_back(es.eigenvectors());
  }
}

double GridEvaluator::jitter_for(std::size_t li, std::size_t vi) const {
  const double v = grid_.variances[vi];
  const double noise_var = noise_sd_ * noise_sd_;
  const double lo = v * evals_[li](0) + noise_var;
  for (double rel = ladder_.start_rel; rel <= ladder_.max_rel * (1.0 + 1e-9); rel *= 10.0) {
    const double jitter = rel * (v + noise_var);
    if (lo + jitter > 0.0) return jitter;
  }
  return kNaN;
}

double GridEvaluator::min_eigenvalue(std::size_t li, std::size_t vi) const {
  return grid_.variances[vi] * evals_[li](0) + noise_sd_ * noise_sd_ + jitter_for(li, vi);
}

std::vector<double> GridEvaluator::lml_table(std::span<const double> y) const {
  if (y.size() != x_.size()) throw std::invalid_argument("lml_table: target size");
  const Eigen::VectorXd v = to_vector(y);
  const double n = static_cast<double>(y.size());
  const double noise_var = noise_sd_ * noise_sd_;
  std::vector<double> out;
  out.reserve(grid_.size());
  for (std::size_t li = 0; li < grid_.length_scales.size(); ++li) {
    const Eigen::VectorXd c = evecs_[li].transpose() * v;
    const Eigen::ArrayXd c2 = c.array().square();
    for (std::size_t vi = 0; vi < grid_.variances.size(); ++vi) {
      const double jitter = jitter_for(li, vi);
      if (std::isnan(jitter)) {
        out.push_back(kNaN);
        continue;
      }
      const Eigen::ArrayXd e =
          grid_.variances[vi] * evals_[li].array() + (noise_var + jitter);
      out.push_back(-0.5 * (c2 / e).sum() - 0.5 * e.log().sum() - 0.5 * n * kLog2Pi);
    }
  }
  return out;
}

GprModel GridEvaluator::fit(std::span<const double> y) const {
  const auto table = lml_table(y);
  std::size_t best = table.size();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::isnan(table[i])) continue;
    if (best == table.size() || table[i] > table[best]) best = i;
  }
  if (best == table.size()) throw IllConditioned("no feasible point on the hyper-grid");
  const std::size_t li = best / grid_.variances.size();
  const std::size_t vi = best % grid_.variances.size();
  GprModel m = fit_fixed(x_, y, noise_sd_, {grid_.length_scales[li], grid_.variances[vi]},
                         ladder_);
  m.min_eigenvalue = grid_.variances[vi] * evals_[li](0) + noise_sd_ * noise_sd_ + m.jitter;
  return m;
}

GprModel fit_gpr(const PointSet& x, std::span<const double> y, double noise_sd,
                 const HyperGrid& grid) {
  return GridEvaluator(x, grid, noise_sd).fit(y);
}

double predict_mean(const GprModel& m, std::span<const double> x) {
  if (x.size() != m.x.dim) throw std::invalid_argument("predict_mean: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    s += matern25_r(dist(x, m.x.point(i)), m.params) * m.weights(static_cast<Eigen::Index>(i));
  }
  return s;
}

std::vector<std::string> test_function_names() {
  return {"franke", "arctan", "gaussian_peak", "oscillatory",
          "genz_continuous", "genz_gaussian", "pairwise_trig"};
}

bool test_function_accepts(const std::string& name, std::size_t d) {
  if (name == "franke" || name == "arctan" || name == "gaussian_peak" || name == "oscillatory") {
    return d == 2;
  }
  if (name == "genz_continuous" || name == "genz_gaussian") return d == 3;
  if (name == "pairwise_trig") return d >= 2;
  return false;
}

double test_function(const std::string& name, std::span<const double> x) {
  if (!test_function_accepts(name, x.size())) {
    throw std::invalid_argument("unknown test function or wrong dimension: " + name + " (d=" +
                                std::to_string(x.size()) + ")");
  }
  const double pi = std::numbers::pi;
  if (name == "franke") {
    const double a = 9.0 * x[0], b = 9.0 * x[1];
    return 0.75 * std::exp(-((a - 2) * (a - 2) + (b - 2) * (b - 2)) / 4.0) +
           0.75 * std::exp(-(a + 1) * (a + 1) / 49.0 - (b + 1) / 10.0) +
           0.5 * std::exp(-((a - 7) * (a - 7) + (b - 3) * (b - 3)) / 4.0) -
           0.2 * std::exp(-(a - 4) * (a - 4) - (b - 7) * (b - 7));
  }
  if (name == "arctan") {
    return std::atan(2.0 * (2.0 * x[0] + 6.0 * x[1] - 5.0)) /
           std::atan(2.0 * (std::sqrt(10.0) + 1.0));
  }
  if (name == "gaussian_peak") {
    const double a = 2.0 * x[0] - 1.1, b = 2.0 * x[1] - 1.0;
    return std::exp(-a * a - 0.5 * b * b);
  }
  if (name == "oscillatory") {
    const double a = 2.0 * x[0] - 1.0, b = 2.0 * x[1] - 1.0;
    return std::sin(pi * (a * a + b * b));
  }
  if (name == "genz_continuous") {
    static constexpr double c[3] = {1.5, 2.0, 2.5};
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += c[i] * std::abs(x[i] - 0.5);
    return std::exp(-s);
  }
  if (name == "genz_gaussian") {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += 9.0 * (x[i] - 0.5) * (x[i] - 0.5);
    return std::exp(-s);
  }
  // pairwise_trig
  const std::size_t d = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) s += std::sin(pi * (x[i] + x[j]));
  }
  return s / (static_cast<double>(d * (d - 1)) / 2.0);
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n < 1 || n > 200) throw std::invalid_argument("gauss_legendre: n must lie in [1, 200]");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root; map [-1, 1] to [0, 1].
    r.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    r.nodes[i] = 0.5 * (1.0 - x);
    r.weights[n - 1 - i] = 0.5 * w;
    r.weights[i] = 0.5 * w;
  }
  return r;
}

QuadratureSpec QuadratureSpec::standard(std::size_t d, std::uint64_t seed) {
  QuadratureSpec s;
  s.kind = d == 2 ? Kind::kGaussLegendre : Kind::kMonteCarlo;
  s.seed = seed;
  return s;
}

CubaturePoints cubature(std::size_t d, const QuadratureSpec& spec) {
  if (d < 1) throw std::invalid_argument("cubature: d must be >= 1");
  CubaturePoints c;
  c.points.dim = d;
  if (spec.kind == QuadratureSpec::Kind::kMonteCarlo) {
    if (spec.samples < 1) throw std::invalid_argument("cubature: need at least one sample");
    c.points = uniform_random(spec.samples, d, spec.seed);
    c.weights.assign(spec.samples, 1.0 / static_cast<double>(spec.samples));
    return c;
  }
  const QuadratureRule rule = gauss_legendre(spec.nodes);
  const double total = std::pow(static_cast<double>(spec.nodes), static_cast<double>(d));
  if (total > 1e7) throw std::invalid_argument("cubature: tensor rule too large");
  const std::size_t count = static_cast<std::size_t>(total);
  c.points.coords.resize(count * d);
  c.weights.resize(count);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t i = 0; i < count; ++i) {
    double w = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      c.points.coords[i * d + k] = rule.nodes[idx[k]];
      w *= rule.weights[idx[k]];
    }
    c.weights[i] = w;
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < spec.nodes) break;
      idx[k] = 0;
    }
  }
  return c;
}

double l2_error(const std::function<double(std::span<const double>)>& g,
                const std::string& name, std::size_t d, const QuadratureSpec& spec) {
  const CubaturePoints c = cubature(d, spec);
  double s = 0.0;
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    const auto p = c.points.point(i);
    const double e = test_function(name, p) - g(p);
    s += c.weights[i] * e * e;
  }
  return std::sqrt(s);
}

double l2_error(const GprModel& m, const std::string& name, std::size_t d,
                const QuadratureSpec& spec) {
  return l2_error([&](std::span<const double> x) { return predict_mean(m, x); }, name, d, spec);
}

void BenchmarkConfig::validate() const {
  if (designs.empty()) throw std::invalid_argument("config: no designs");
  for (const auto& name : designs) {
    if (name != "korobov" && name != "explicit" && name != "halton" && name != "sobol" &&
        name != "random") {
      throw std::invalid_argument("config: unknown design '" + name + "'");
    }
  }
  if (n_ladder.empty()) throw std::invalid_argument("config: empty N ladder");
  for (auto n : n_ladder) {
    if (n < 2) throw std::invalid_argument("config: N must be >= 2");
  }
  if (!test_function_accepts(function, d)) {
    throw std::invalid_argument("config: function '" + function + "' does not accept d = " +
                                std::to_string(d));
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
    throw std::invalid_argument("config: noise_sd must be finite and >= 0");
  }
  if (grid.size() == 0) throw std::invalid_argument("config: empty hyper-grid");
  for (double v : grid.length_scales) check_params({v, 1.0});
  for (double v : grid.variances) check_params({1.0, v});
}

BenchmarkConfig parse_benchmark_config(std::istream& is) {
  BenchmarkConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "designs") {
        cfg.designs = split_commas(value);
      } else if (key == "d") {
        cfg.d = std::stoul(value);
      } else if (key == "n") {
        cfg.n_ladder = parse_ladder(value);
      } else if (key == "function") {
        cfg.function = value;
      } else if (key == "trials") {
        cfg.trials = std::stoul(value);
      } else if (key == "noise_sd") {
        cfg.noise_sd = std::stod(value);
      } else if (key == "seed") {
        cfg.master_seed = std::stoull(value);
      } else if (key == "explicit_p") {
        cfg.explicit_p = std::stoll(value);
      } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(std::stoul(value));
      } else if (key == "length_scales") {
        cfg.grid.length_scales = parse_doubles(value);
      } else if (key == "variances") {
        cfg.grid.variances = parse_doubles(value);
      } else if (key == "quadrature") {
        const auto colon = value.find(':');
        const std::string kind = value.substr(0, colon);
        QuadratureSpec q;
        if (kind == "gl") {
          q.kind = QuadratureSpec::Kind::kGaussLegendre;
          if (colon != std::string::npos) q.nodes = std::stoul(value.substr(colon + 1));
        } else if (kind == "mc") {
          q.kind = QuadratureSpec::Kind::kMonteCarlo;
          if (colon != std::string::npos) q.samples = std::stoul(value.substr(colon + 1));
        } else {
          throw std::invalid_argument("quadrature must be gl[:nodes] or mc[:samples]");
        }
        cfg.quadrature = q;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": value out of range");
    }
  }
  cfg.validate();
  return cfg;
}

PointSet benchmark_design(const std::string& design, std::int64_t n, std::size_t d,
                          const BenchmarkConfig& cfg) {
  const auto count = static_cast<std::size_t>(n);
  if (design == "halton") return halton(count, d);
  if (design == "sobol") return sobol(count, d);
  if (design == "random") {
    return uniform_random(count, d,
                          derive_seed(cfg.master_seed, {name_hash("design"), name_hash("random"),
                                                        static_cast<std::uint64_t>(n), d}));
  }
  if (design == "korobov") {
    SearchOptions opt;
    opt.threads = cfg.threads;
    const SearchResult r = search_korobov(n, d, opt);
    return generate_points(RankOneLattice::korobov(r.a_star, n, d));
  }
  if (design == "explicit") {
    const auto alpha = make_algebraic_vector(cfg.explicit_p, d);
    ScanOptions opt;
    opt.threads = cfg.threads;
    for (const auto& rec : explicit_sequence(alpha, n, opt)) {
      if (rec.n == n) return generate_points(rec.lattice());
    }
    throw std::invalid_argument("N = " + std::to_string(n) +
                                " is not a term of the explicit sequence");
  }
  throw std::invalid_argument("unknown design '" + design + "'");
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  const std::size_t d = cfg.d;
  QuadratureSpec q = cfg.quadrature ? *cfg.quadrature : QuadratureSpec::standard(d, 0);
  q.seed = derive_seed(cfg.master_seed, {name_hash("integration")});
  const CubaturePoints cub = cubature(d, q);
  std::vector<double> f_cub(cub.weights.size());
  for (std::size_t i = 0; i < f_cub.size(); ++i) f_cub[i] = test_function(cfg.function, cub.points.point(i));

  std::vector<BenchmarkRow> rows;
  for (const auto& design : cfg.designs) {
    for (std::int64_t n : cfg.n_ladder) {
      const PointSet x = benchmark_design(design, n, d, cfg);
      std::vector<double> f_x(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) f_x[i] = test_function(cfg.function, x.point(i));
      const GridEvaluator ev(x, cfg.grid, cfg.noise_sd);

      std::vector<double> err(cfg.trials, kNaN);
      std::vector<double> min_eig(cfg.trials, kNaN);
      parallel_for(cfg.trials, resolve_threads(cfg.threads), [&](std::size_t t) {
        Rng rng(derive_seed(cfg.master_seed,
                            {name_hash("noise"), static_cast<std::uint64_t>(n), t}));
        std::vector<double> y(f_x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = f_x[i] + cfg.noise_sd * rng.normal();
        try {
          const GprModel m = ev.fit(y);
          double s = 0.0;
          for (std::size_t i = 0; i < f_cub.size(); ++i) {
            const double e = f_cub[i] - predict_mean(m, cub.points.point(i));
            s += cub.weights[i] * e * e;
          }
          err[t] = std::sqrt(s);
          min_eig[t] = *m.min_eigenvalue;
        } catch (const IllConditioned&) {
        }
      });

      BenchmarkRow row;
      row.design = design;
      row.n = n;
      row.d = d;
      row.function = cfg.function;
      row.trials = cfg.trials;
      row.min_kernel_eigenvalue = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        if (std::isnan(err[t])) {
          ++row.skipped;
          continue;
        }
        row.errors.push_back(err[t]);
        row.min_kernel_eigenvalue = std::min(row.min_kernel_eigenvalue, min_eig[t]);
      }
      const std::size_t k = row.errors.size();
      if (k > 0) {
        double mean = 0.0;
        for (double e : row.errors) mean += e;
        mean /= static_cast<double>(k);
        double var = 0.0;
        for (double e : row.errors) var += (e - mean) * (e - mean);
        row.mean_l2 = mean;
        row.sd_l2 = k > 1 ? std::sqrt(var / static_cast<double>(k - 1)) : 0.0;
      } else {
        row.mean_l2 = kNaN;
        row.sd_l2 = kNaN;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_benchmark_header(std::ostream& os) {
  os << "design,N,d,function,trials,mean_l2,sd_l2,skipped\n";
}

void write_benchmark_row(std::ostream& os, const BenchmarkRow& r) {
  char mean[40], sd[40];
  std::snprintf(mean, sizeof mean, "%.17g", r.mean_l2);
  std::snprintf(sd, sizeof sd, "%.17g", r.sd_l2);
  os << r.design << ',' << r.n << ',' << r.d << ',' << r.function << ',' << r.trials << ','
     << mean << ',' << sd << ',' << r.skipped << '\n';
}

}  // namespace latdesign
