#include "latdesign/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "latdesign/baselines.hpp"
#include "latdesign/errors.hpp"
#include "latdesign/geometry_metrics.hpp"
#include "latdesign/gpr.hpp"
#include "latdesign/korobov_search.hpp"
#include "latdesign/kronecker.hpp"
#include "latdesign/parallel.hpp"

namespace latdesign {

namespace {

constexpr const char* kVersion = "0.1.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void close_output(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

Delta parse_delta(const std::string& s) {
  Delta d;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    d.num = std::stoll(s.substr(0, slash));
    d.den = std::stoll(s.substr(slash + 1));
  } else {
    const auto dot = s.find('.');
    if (dot == std::string::npos) throw std::invalid_argument("--delta must be p/q or a decimal");
    const std::string digits = s.substr(dot + 1);
    if (digits.empty() || digits.size() > 12) throw std::invalid_argument("--delta: bad decimal");
    d.den = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) d.den *= 10;
    d.num = std::stoll(s.substr(0, dot) + digits);
  }
  if (d.den <= 0 || 4 * d.num <= d.den || d.num >= d.den) {
    throw std::invalid_argument("--delta must lie strictly between 1/4 and 1");
  }
  return d;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

struct Manifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string started = utc_now();
  std::vector<std::string> outputs;

  void write(const std::string& out_path) const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["version"] = kVersion;
    j["master_seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["started"] = started;
    j["finished"] = utc_now();
    j["outputs"] = outputs;
    const std::string path = out_path + ".manifest.json";
    std::ofstream os = open_output(path);
    os << j.dump(2) << '\n';
    close_output(os, path);
  }
};

nlohmann::json collect_parameters(const CLI::App* sub) {
  nlohmann::json p = nlohmann::json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      p[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
    } else if (!opt->get_default_str().empty()) {
      p[name] = opt->get_default_str();
    } else {
      p[name] = nullptr;
    }
  }
  return p;
}

// Design points for (design, N, d) shared by gen-points, metrics and
// separation-scan.
struct DesignSpec {
  std::string design = "korobov";
  std::int64_t a = 0;          // korobov; 0 = search
  std::string z;               // lattice generating vector
  std::int64_t p = 2;          // explicit
  std::uint64_t seed = 0;      // random
  unsigned threads = 0;
};

std::optional<RankOneLattice> design_lattice(const DesignSpec& s, std::int64_t n, std::size_t d) {
  if (s.design == "korobov") {
    std::int64_t a = s.a;
    if (a == 0) {
      SearchOptions opt;
      opt.threads = s.threads;
      a = search_korobov(n, d, opt).a_star;
    }
    return RankOneLattice::korobov(a, n, d);
  }
  if (s.design == "lattice") {
    const auto z = parse_int_list(s.z);
    if (z.size() != d) throw std::invalid_argument("--z must have d entries");
    return RankOneLattice(n, z);
  }
  if (s.design == "explicit") {
    ScanOptions opt;
    opt.threads = s.threads;
    for (const auto& rec : explicit_sequence(make_algebraic_vector(s.p, d), n, opt)) {
      if (rec.n == n) return rec.lattice();
    }
    throw std::invalid_argument("N = " + std::to_string(n) +
                                " is not a term of the explicit sequence");
  }
  return std::nullopt;
}

PointSet design_points(const DesignSpec& s, std::int64_t n, std::size_t d) {
  if (auto lat = design_lattice(s, n, d)) return generate_points(*lat);
  const auto count = static_cast<std::size_t>(n);
  if (s.design == "halton") return halton(count, d);
  if (s.design == "sobol") return sobol(count, d);
  if (s.design == "random") return uniform_random(count, d, s.seed);
  throw std::invalid_argument("unknown design '" + s.design + "'");
}

const std::vector<std::string> kDesigns = {"korobov", "lattice", "explicit", "halton", "sobol",
                                           "random"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-uniform rank-1 lattice designs", "latdesign"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  unsigned threads = 0;
  std::string out_path;

  // construct-explicit
  auto* ce = app.add_subcommand("construct-explicit",
                                "Best simultaneous approximations of (p^{1/(d+1)}, ..., p^{d/(d+1)})");
  std::int64_t ce_p = 2;
  std::size_t ce_d = 2;
  std::int64_t ce_nmax = 0;
  unsigned ce_bits = 192;
  ce->add_option("--p", ce_p, "Prime base")->capture_default_str();
  ce->add_option("--d", ce_d, "Dimension")->capture_default_str()->check(CLI::Range(1, 64));
  ce->add_option("--n-max", ce_nmax, "Largest N scanned")->required()->check(CLI::PositiveNumber);
  ce->add_option("--frac-bits", ce_bits, "Fixed-point fractional bits (multiple of 64)")
      ->capture_default_str();
  ce->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  ce->add_option("--out", out_path, "Output CSV")->required();

  // search-korobov
  auto* sk = app.add_subcommand("search-korobov", "Exhaustive LLL-scored Korobov search");
  std::string sk_n;
  std::string sk_d = "2";
  std::string sk_delta = "99/100";
  bool sk_exact_lll = false;
  sk->add_option("--n", sk_n, "N values: comma list or preset (primes-pow2, pow2)")->required();
  sk->add_option("--d", sk_d, "Dimensions, comma list")->capture_default_str();
  sk->add_option("--delta", sk_delta, "Lovasz parameter, p/q or decimal")->capture_default_str();
  bool sk_exact_score = false;
  sk->add_flag("--exact-lll", sk_exact_lll, "Use integral (big-integer) LLL");
  sk->add_flag("--exact-score", sk_exact_score,
               "Score with enumerated shortest vectors (N <= 600, d <= 4)");
  sk->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  sk->add_option("--out", out_path, "Output CSV")->required();

  // gen-points
  auto* gp = app.add_subcommand("gen-points", "Export a design as CSV points");
  DesignSpec gp_spec;
  std::int64_t gp_n = 0;
  std::size_t gp_d = 2;
  gp->add_option("--design", gp_spec.design, "Design family")
      ->capture_default_str()
      ->check(CLI::IsMember(kDesigns));
  gp->add_option("--n", gp_n, "Number of points")->required()->check(CLI::PositiveNumber);
  gp->add_option("--d", gp_d, "Dimension")->capture_default_str()->check(CLI::Range(1, 20));
  gp->add_option("--a", gp_spec.a, "Korobov parameter (0 = search)")->capture_default_str();
  gp->add_option("--z", gp_spec.z, "Generating vector for --design lattice, comma list");
  gp->add_option("--p", gp_spec.p, "Prime base for --design explicit")->capture_default_str();
  gp->add_option("--seed", gp_spec.seed, "Seed for --design random")->capture_default_str();
  gp->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  gp->add_option("--out", out_path, "Output CSV")->required();

  // metrics
  auto* mt = app.add_subcommand("metrics", "Separation, lattice minima, mesh-ratio bound, spectral test");
  DesignSpec mt_spec;
  std::string mt_n;
  std::size_t mt_d = 2;
  std::size_t mt_probes = 0;
  std::vector<std::string> mt_project;
  mt->add_option("--design", mt_spec.design, "korobov, lattice or explicit")
      ->capture_default_str()
      ->check(CLI::IsMember({"korobov", "lattice", "explicit"}));
  mt->add_option("--n", mt_n, "N values: comma list or preset")->required();
  mt->add_option("--d", mt_d, "Dimension")->capture_default_str()->check(CLI::Range(1, 20));
  mt->add_option("--a", mt_spec.a, "Korobov parameter (0 = search per N)")->capture_default_str();
  mt->add_option("--z", mt_spec.z, "Generating vector for --design lattice");
  mt->add_option("--p", mt_spec.p, "Prime base for --design explicit")->capture_default_str();
  mt->add_option("--probes", mt_probes, "Covering-radius probes (0 = skip)")->capture_default_str();
  mt->add_option("--seed", mt_spec.seed, "Probe seed")->capture_default_str();
  mt->add_option("--project", mt_project,
                 "Report projection diagnostics for coordinate pairs i,j (1-based); repeatable");
  mt->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  mt->add_option("--out", out_path, "Output CSV")->required();

  // separation-scan
  auto* ss = app.add_subcommand("separation-scan", "q(P_N) * N^{1/d} along an N ladder");
  DesignSpec ss_spec;
  std::string ss_n;
  std::size_t ss_d = 2;
  std::size_t ss_seeds = 1;
  ss->add_option("--design", ss_spec.design, "Design family")
      ->capture_default_str()
      ->check(CLI::IsMember(kDesigns));
  ss->add_option("--n", ss_n, "N values: comma list or preset")->required();
  ss->add_option("--d", ss_d, "Dimension")->capture_default_str()->check(CLI::Range(1, 20));
  ss->add_option("--p", ss_spec.p, "Prime base for --design explicit")->capture_default_str();
  ss->add_option("--z", ss_spec.z, "Generating vector for --design lattice");
  ss->add_option("--seed", ss_spec.seed, "First seed for --design random")->capture_default_str();
  ss->add_option("--seeds", ss_seeds, "Number of consecutive seeds for --design random")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ss->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  ss->add_option("--out", out_path, "Output CSV")->required();

  // benchmark-gpr
  auto* bg = app.add_subcommand("benchmark-gpr", "Matern-5/2 GPR L2-error benchmark");
  std::string bg_config;
  std::optional<std::size_t> bg_trials;
  std::optional<std::uint64_t> bg_seed;
  bg->add_option("--config", bg_config, "key=value configuration file")->required();
  bg->add_option("--trials", bg_trials, "Override the number of trials");
  bg->add_option("--seed", bg_seed, "Override the master seed");
  bg->add_option("--threads", threads, "Worker threads (0 = LATDESIGN_THREADS or all cores)");
  bg->add_option("--out", out_path, "Output CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Manifest manifest;
  manifest.command = sub->get_name();
  manifest.parameters = collect_parameters(sub);
  const unsigned nthreads = resolve_threads(threads);
  manifest.parameters["threads_resolved"] = nthreads;

  try {
    if (sub == ce) {
      const auto alpha = make_algebraic_vector(ce_p, ce_d, ce_bits);
      ScanOptions opt;
      opt.threads = nthreads;
      const auto recs = explicit_sequence(alpha, ce_nmax, opt);
      std::ofstream os = open_output(out_path);
      os << "i,N_i,z,dist\n";
      std::vector<std::int64_t> ns;
      for (const auto& r : recs) {
        os << r.index << ',' << r.n << ',';
        for (std::size_t j = 0; j < r.z.size(); ++j) os << (j ? ";" : "") << r.z[j];
        os << ',' << r.dist.to_decimal(20) << '\n';
        ns.push_back(r.n);
      }
      close_output(os, out_path);
      if (ns.size() >= 2) {
        const RatioStats st = ratio_stats(ns);
        char buf[128];
        std::snprintf(buf, sizeof buf, "terms=%zu ratio_min=%.4f ratio_median=%.4f ratio_max=%.4f\n",
                      ns.size(), st.min, st.median, st.max);
        out << buf;
      }
    } else if (sub == sk) {
      SearchOptions opt;
      opt.delta = parse_delta(sk_delta);
      opt.arithmetic = sk_exact_lll ? LllArithmetic::kExact : LllArithmetic::kFloating;
      opt.threads = nthreads;
      const auto ns = parse_ladder(sk_n);
      const auto ds = parse_int_list(sk_d);
      std::ofstream os = open_output(out_path);
      os << "N,d,a_star,score,lambda1_primal,lambda1_dual,elapsed_ms\n";
      for (auto d : ds) {
        if (d < 2) throw std::invalid_argument("--d entries must be >= 2");
        for (auto n : ns) {
          const auto t0 = std::chrono::steady_clock::now();
          const SearchResult r = sk_exact_score
                                     ? exact_search(n, static_cast<std::size_t>(d), opt)
                                     : search_korobov(n, static_cast<std::size_t>(d), opt);
          const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
          if (r.warning) err << "warning: " << *r.warning << '\n';
          os << n << ',' << d << ',' << r.a_star << ',' << fmt17(r.score) << ','
             << fmt17(r.lambda1_primal) << ',' << fmt17(r.lambda1_dual) << ',' << ms << '\n';
        }
      }
      close_output(os, out_path);
    } else if (sub == gp) {
      gp_spec.threads = nthreads;
      if (gp_spec.design == "random") manifest.seed = gp_spec.seed;
      const PointSet ps = design_points(gp_spec, gp_n, gp_d);
      std::ofstream os = open_output(out_path);
      write_points_csv(os, ps);
      close_output(os, out_path);
    } else if (sub == mt) {
      mt_spec.threads = nthreads;
      manifest.seed = mt_spec.seed;
      MetricsOptions opt;
      opt.covering_probes = mt_probes;
      opt.seed = mt_spec.seed;
      opt.threads = nthreads;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& s : mt_project) {
        const auto ij = parse_int_list(s);
        if (ij.size() != 2 || ij[0] < 1 || ij[1] < 1 || ij[0] > static_cast<std::int64_t>(mt_d) ||
            ij[1] > static_cast<std::int64_t>(mt_d) || ij[0] == ij[1]) {
          throw std::invalid_argument("--project expects two distinct coordinates in [1, d]");
        }
        pairs.emplace_back(static_cast<std::size_t>(ij[0] - 1), static_cast<std::size_t>(ij[1] - 1));
      }
      std::ofstream os = open_output(out_path);
      write_metrics_header(os);
      std::ostringstream proj;
      for (auto n : parse_ladder(mt_n)) {
        const RankOneLattice lat = *design_lattice(mt_spec, n, mt_d);
        write_metrics_row(os, compute_metrics(lat, opt));
        for (const auto& [i, j] : pairs) {
          const auto diag = projection_diagnostic(lat, i, j);
          const auto sep = separation_radius(project(generate_points(lat), i, j),
                                             SeparationMethod::kAuto, nthreads);
          proj << n << ',' << (i + 1) << ',' << (j + 1) << ',' << diag.gcd << ',' << diag.distinct
               << ',' << fmt17(sep.q) << ',' << (sep.duplicates ? 1 : 0) << '\n';
        }
      }
      close_output(os, out_path);
      if (!pairs.empty()) {
        const std::string ppath = out_path + ".projections.csv";
        std::ofstream ps = open_output(ppath);
        ps << "N,i,j,gcd,distinct,q,duplicates\n" << proj.str();
        close_output(ps, ppath);
        manifest.outputs.push_back(ppath);
      }
    } else if (sub == ss) {
      ss_spec.threads = nthreads;
      if (ss_spec.design == "random") manifest.seed = ss_spec.seed;
      std::ofstream os = open_output(out_path);
      os << "design,N,d,seed,q,q_times_N_pow,duplicates\n";
      const std::size_t reps = ss_spec.design == "random" ? ss_seeds : 1;
      for (auto n : parse_ladder(ss_n)) {
        for (std::size_t r = 0; r < reps; ++r) {
          DesignSpec s = ss_spec;
          s.seed = ss_spec.seed + r;
          const PointSet ps = design_points(s, n, ss_d);
          if (ps.size() < 2) throw std::invalid_argument("separation needs N >= 2");
          const auto sep = separation_radius(ps, SeparationMethod::kAuto, nthreads);
          const double stat =
              sep.q * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(ss_d));
          os << s.design << ',' << n << ',' << ss_d << ',';
          if (s.design == "random") os << s.seed;
          os << ',' << fmt17(sep.q) << ',' << fmt17(stat) << ',' << (sep.duplicates ? 1 : 0)
             << '\n';
        }
      }
      close_output(os, out_path);
    } else if (sub == bg) {
      std::ifstream is(bg_config);
      if (!is) throw IoError("cannot read '" + bg_config + "'");
      BenchmarkConfig cfg = parse_benchmark_config(is);
      if (bg_trials) cfg.trials = *bg_trials;
      if (bg_seed) cfg.master_seed = *bg_seed;
      cfg.threads = nthreads;
      cfg.validate();
      manifest.seed = cfg.master_seed;
      const auto rows = run_benchmark(cfg);
      std::ofstream os = open_output(out_path);
      write_benchmark_header(os);
      for (const auto& r : rows) write_benchmark_row(os, r);
      close_output(os, out_path);
    }
    manifest.outputs.insert(manifest.outputs.begin(), out_path);
    manifest.write(out_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const OracleInfeasible& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const LimitReached& e) {
    err << "error: " << e.what() << " (last scanned N = " << e.last_scanned() << ")\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace latdesign
