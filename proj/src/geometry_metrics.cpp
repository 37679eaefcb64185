#include "latdesign/geometry_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "latdesign/baselines.hpp"
#include "latdesign/errors.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/rng.hpp"

namespace latdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

// Splits [0, n) into contiguous chunks, runs body on each, and returns the
// per-chunk results in order.
template <typename T, typename F>
std::vector<T> chunked(std::size_t n, unsigned threads, T init, F body) {
  const unsigned t = resolve_threads(threads);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(n, t * 4));
  std::vector<T> out(chunks, init);
  parallel_for(chunks, t, [&](std::size_t c) {
    const std::size_t lo = n * c / chunks;
    const std::size_t hi = n * (c + 1) / chunks;
    out[c] = body(lo, hi);
  });
  return out;
}

double brute_min_sq(const PointSet& ps, unsigned threads) {
  const std::size_t n = ps.size();
  auto parts = chunked<double>(n, threads, kInf, [&](std::size_t lo, std::size_t hi) {
    double best = kInf;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto p = ps.point(i);
      for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, dist_sq(p, ps.point(j)));
    }
    return best;
  });
  return *std::min_element(parts.begin(), parts.end());
}

// Buckets points into cubes of side s. Any pair closer than s lies in the same
// or adjacent cells, so a best adjacent-pair distance m <= s is the exact
// minimum; otherwise the side grows and the pass repeats.
double grid_min_sq(const PointSet& ps) {
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim;
  std::vector<double> lo(d, kInf), hi(d, -kInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], ps.point(i)[k]);
      hi[k] = std::max(hi[k], ps.point(i)[k]);
    }
  }
  double extent = 0.0;
  for (std::size_t k = 0; k < d; ++k) extent = std::max(extent, hi[k] - lo[k]);
  if (extent == 0.0) return 0.0;

  // Half neighbourhood: offsets whose first nonzero entry is positive.
  std::vector<std::vector<int>> offsets;
  {
    std::vector<int> off(d, -1);
    for (;;) {
      std::size_t first = 0;
      while (first < d && off[first] == 0) ++first;
      if (first < d && off[first] > 0) offsets.push_back(off);
      std::size_t k = 0;
      while (k < d && off[k] == 1) off[k++] = -1;
      if (k == d) break;
      ++off[k];
    }
  }

  double side = extent * std::pow(static_cast<double>(n), -1.0 / static_cast<double>(d));
  for (;;) {
    std::vector<std::uint64_t> cells(d);
    bool fits = true;
    unsigned __int128 total = 1;
    for (std::size_t k = 0; k < d; ++k) {
      cells[k] = static_cast<std::uint64_t>((hi[k] - lo[k]) / side) + 3;
      total *= cells[k];
      if (total > (static_cast<unsigned __int128>(1) << 62)) fits = false;
    }
    if (!fits) {
      side *= 2.0;
      continue;
    }
    auto cell_of = [&](std::span<const double> p, std::vector<std::int64_t>& c) {
      for (std::size_t k = 0; k < d; ++k) {
        c[k] = static_cast<std::int64_t>(std::floor((p[k] - lo[k]) / side)) + 1;
      }
    };
    auto key_of = [&](const std::vector<std::int64_t>& c) {
      std::uint64_t key = 0;
      for (std::size_t k = d; k-- > 0;) key = key * cells[k] + static_cast<std::uint64_t>(c[k]);
      return key;
    };
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    std::vector<std::int64_t> c(d), nb(d);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of(ps.point(i), c);
      grid[key_of(c)].push_back(i);
    }
    double best = kInf;
    for (const auto& [key, members] : grid) {
      cell_of(ps.point(members.front()), c);
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          best = std::min(best, dist_sq(ps.point(members[a]), ps.point(members[b])));
        }
      }
      for (const auto& off : offsets) {
        for (std::size_t k = 0; k < d; ++k) nb[k] = c[k] + off[k];
        const auto it = grid.find(key_of(nb));
        if (it == grid.end()) continue;
        for (std::size_t a : members) {
          for (std::size_t b : it->second) best = std::min(best, dist_sq(ps.point(a), ps.point(b)));
        }
      }
    }
    if (best <= side * side) return best;
    side = std::isfinite(best) ? std::max(std::sqrt(best), side * 1.5) : side * 1.5;
  }
}

double tree_min_sq(const PointSet& ps, unsigned threads) {
  const KdTree tree(ps);
  auto parts = chunked<double>(ps.size(), threads, kInf, [&](std::size_t lo, std::size_t hi) {
    double best = kInf;
    for (std::size_t i = lo; i < hi; ++i) best = std::min(best, tree.nearest_sq(ps.point(i), i));
    return best;
  });
  return *std::min_element(parts.begin(), parts.end());
}

}  // namespace

KdTree::KdTree(const PointSet& ps, std::size_t leaf_size) : ps_(ps), order_(ps.size()) {
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  if (!order_.empty()) build(0, order_.size(), std::max<std::size_t>(leaf_size, 1));
}

std::int64_t KdTree::build(std::size_t begin, std::size_t end, std::size_t leaf_size) {
  const auto id = static_cast<std::int64_t>(nodes_.size());
  nodes_.push_back({begin, end, 0, 0.0});
  if (end - begin <= leaf_size) return id;
  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < ps_.dim; ++k) {
    double lo = kInf, hi = -kInf;
    for (std::size_t i = begin; i < end; ++i) {
      const double x = ps_.point(order_[i])[k];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = k;
    }
  }
  if (widest <= 0.0) return id;
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     return ps_.point(a)[axis] < ps_.point(b)[axis];
                   });
  const double split = ps_.point(order_[mid])[axis];
  const std::int64_t left = build(begin, mid, leaf_size);
  const std::int64_t right = build(mid, end, leaf_size);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::search(std::int64_t id, std::span<const double> q, std::size_t skip,
                    double& best) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      if (order_[i] == skip) continue;
      best = std::min(best, dist_sq(q, ps_.point(order_[i])));
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  const std::int64_t near = diff < 0.0 ? node.left : node.right;
  const std::int64_t far = diff < 0.0 ? node.right : node.left;
  search(near, q, skip, best);
  if (diff * diff < best) search(far, q, skip, best);
}

double KdTree::nearest_sq(std::span<const double> q, std::size_t skip) const {
  double best = kInf;
  if (!nodes_.empty()) search(0, q, skip, best);
  return best;
}

SeparationResult separation_radius(const PointSet& ps, SeparationMethod method,
                                   unsigned threads) {
  if (ps.size() < 2) throw std::invalid_argument("separation_radius: need at least two points");
  if (method == SeparationMethod::kAuto) {
    if (ps.size() <= 2048) {
      method = SeparationMethod::kBruteForce;
    } else if (ps.dim <= 3) {
      method = SeparationMethod::kGrid;
    } else {
      method = SeparationMethod::kTree;
    }
  }
  double m = 0.0;
  switch (method) {
    case SeparationMethod::kBruteForce: m = brute_min_sq(ps, threads); break;
    case SeparationMethod::kGrid: m = grid_min_sq(ps); break;
    default: m = tree_min_sq(ps, threads); break;
  }
  SeparationResult r;
  r.min_dist_sq = m;
  r.duplicates = (m == 0.0);
  r.q = 0.5 * std::sqrt(m);
  return r;
}

LatticeMinima lattice_lambda1(const RankOneLattice& lat, EnumerationLimits limits) {
  const IntegerBasis pb = primal_basis(lat);
  const IntegerBasis db = dual_basis(lat);
  LatticeMinima m;
  ShortestVector sp, sd;
  try {
    sp = exact_shortest(pb, limits);
    sd = exact_shortest(db, limits);
  } catch (const OracleInfeasible&) {
    sp = shortest_basis_vector(lll_reduce(pb));
    sd = shortest_basis_vector(lll_reduce(db));
    m.approximate = true;
  }
  m.primal = sp.norm;
  m.dual = sd.norm;
  m.primal_norm_sq = sp.norm_sq;
  m.dual_norm_sq = sd.norm_sq;
  return m;
}

MeshBound mesh_ratio_bound(const LatticeMinima& m, std::size_t d) {
  const double dd = static_cast<double>(d);
  return {dd * std::sqrt(dd) / (m.primal * m.dual), m.approximate};
}

MeshBound mesh_ratio_bound(const RankOneLattice& lat, EnumerationLimits limits) {
  return mesh_ratio_bound(lattice_lambda1(lat, limits), lat.dim());
}

double spectral_test(const RankOneLattice& lat, EnumerationLimits limits) {
  return 1.0 / lattice_lambda1(lat, limits).dual;
}

PointSet covering_probes(std::size_t d, std::size_t count, std::uint64_t seed) {
  if (d < 1 || d > 20) throw std::invalid_argument("covering_probes: d must lie in [1, 20]");
  static constexpr std::uint64_t kBases[20] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  PointSet ps;
  ps.dim = d;
  ps.coords.reserve(count * d);
  const std::size_t corners = d < 63 ? (std::size_t{1} << d) : SIZE_MAX;
  Rng rng(seed);
  std::uint64_t halton_index = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (i < corners) {
      for (std::size_t k = 0; k < d; ++k) ps.coords.push_back(static_cast<double>((i >> k) & 1u));
    } else if ((i - corners) % 2 == 0) {
      for (std::size_t k = 0; k < d; ++k) ps.coords.push_back(radical_inverse(halton_index, kBases[k]));
      ++halton_index;
    } else {
      for (std::size_t k = 0; k < d; ++k) ps.coords.push_back(rng.uniform());
    }
  }
  return ps;
}

CoveringEstimate covering_radius_estimate(const PointSet& ps, std::size_t probes,
                                          std::uint64_t seed, unsigned threads) {
  if (probes < 1) throw std::invalid_argument("covering_radius_estimate: probes must be >= 1");
  if (ps.size() < 1) throw std::invalid_argument("covering_radius_estimate: empty design");
  const PointSet probe = covering_probes(ps.dim, probes, seed);
  const KdTree tree(ps);
  auto parts = chunked<double>(probes, threads, 0.0, [&](std::size_t lo, std::size_t hi) {
    double worst = 0.0;
    for (std::size_t i = lo; i < hi; ++i) worst = std::max(worst, tree.nearest_sq(probe.point(i)));
    return worst;
  });
  return {std::sqrt(*std::max_element(parts.begin(), parts.end())), probes};
}

PointSet project(const PointSet& ps, std::size_t i, std::size_t j) {
  if (i >= ps.dim || j >= ps.dim) throw std::invalid_argument("project: coordinate out of range");
  PointSet out;
  out.dim = 2;
  out.label = ps.label;
  out.coords.reserve(ps.size() * 2);
  for (std::size_t n = 0; n < ps.size(); ++n) {
    out.coords.push_back(ps.point(n)[i]);
    out.coords.push_back(ps.point(n)[j]);
  }
  return out;
}

ProjectionDiagnostic projection_diagnostic(const RankOneLattice& lat, std::size_t i,
                                           std::size_t j) {
  if (i >= lat.dim() || j >= lat.dim() || i == j) {
    throw std::invalid_argument("projection_diagnostic: need two distinct coordinates");
  }
  const std::int64_t n = lat.n();
  const auto z = lat.reduced_z();
  ProjectionDiagnostic r;
  r.i = i;
  r.j = j;
  r.gcd = gcd64(gcd64(n, z[i]), z[j]);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::int64_t a = 0, b = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    seen.emplace(a, b);
    a = mod_floor(a + z[i], n);
    b = mod_floor(b + z[j], n);
  }
  r.distinct = static_cast<std::int64_t>(seen.size());
  return r;
}

double minkowski_constant(std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::pow(2.0, dd) * std::tgamma(1.0 + dd / 2.0) / std::pow(std::numbers::pi, dd / 2.0);
}

DesignMetrics compute_metrics(const RankOneLattice& lat, const MetricsOptions& options) {
  DesignMetrics m;
  m.n = lat.n();
  m.d = lat.dim();
  const PointSet ps = generate_points(lat);
  if (ps.size() >= 2) {
    const SeparationResult s = separation_radius(ps, SeparationMethod::kAuto, options.threads);
    m.q = s.q;
    m.duplicates = s.duplicates;
  }
  m.q_times_n_pow = m.q * std::pow(static_cast<double>(m.n), 1.0 / static_cast<double>(m.d));
  const LatticeMinima lm = lattice_lambda1(lat, options.limits);
  m.lambda1_primal = lm.primal;
  m.lambda1_dual = lm.dual;
  m.approximate = lm.approximate;
  m.mesh_ratio_bound = mesh_ratio_bound(lm, m.d).value;
  m.spectral = 1.0 / lm.dual;
  if (options.covering_probes > 0) {
    const auto c = covering_radius_estimate(ps, options.covering_probes, options.seed,
                                            options.threads);
    m.covering_estimate = c.value;
    m.covering_probes = c.probes;
  }
  return m;
}

void write_metrics_header(std::ostream& os) {
  os << "N,d,q,q_times_N_pow,lambda1,lambda1_dual,bound,spectral,covering_est,flags\n";
}

void write_metrics_row(std::ostream& os, const DesignMetrics& m) {
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  os << m.n << ',' << m.d << ',' << num(m.q) << ',' << num(m.q_times_n_pow) << ','
     << num(m.lambda1_primal) << ',' << num(m.lambda1_dual) << ',' << num(m.mesh_ratio_bound)
     << ',' << num(m.spectral) << ',';
  if (m.covering_estimate) os << num(*m.covering_estimate);
  os << ',';
  std::string flags;
  if (m.duplicates) flags += "duplicates";
  if (m.approximate) flags += flags.empty() ? "approximate" : ";approximate";
  os << flags << '\n';
}

}  // namespace latdesign
