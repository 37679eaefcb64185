#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "latdesign/lattice_core.hpp"
#include "latdesign/lll.hpp"

namespace latdesign {

// Static k-d tree over a PointSet (which must outlive the tree).
class KdTree {
 public:
  explicit KdTree(const PointSet& ps, std::size_t leaf_size = 8);

  // Squared distance from q to the nearest point, skipping index `skip`
  // (pass SIZE_MAX to skip nothing). Infinity if no candidate exists.
  double nearest_sq(std::span<const double> q, std::size_t skip = SIZE_MAX) const;

 private:
  struct Node {
    std::size_t begin, end;  // range in order_
    std::size_t axis;
    double split;
    std::int64_t left = -1, right = -1;
  };

  std::int64_t build(std::size_t begin, std::size_t end, std::size_t leaf_size);
  void search(std::int64_t node, std::span<const double> q, std::size_t skip,
              double& best) const;

  const PointSet& ps_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

enum class SeparationMethod { kAuto, kBruteForce, kGrid, kTree };

struct SeparationResult {
  double q = 0.0;           // half the minimum pairwise distance
  double min_dist_sq = 0.0;
  bool duplicates = false;  // two coincident points; q is then 0
};

// Separation radius on the unwrapped cube. All methods compute the same
// floating-point squared distances, so they agree exactly.
SeparationResult separation_radius(const PointSet& ps,
                                   SeparationMethod method = SeparationMethod::kAuto,
                                   unsigned threads = 1);

struct LatticeMinima {
  double primal = 0.0;  // lambda_1 of the lattice (1/N) z Z + Z^d
  double dual = 0.0;    // lambda_1 of the dual
  std::int64_t primal_norm_sq = 0;  // of N times the shortest primal vector
  std::int64_t dual_norm_sq = 0;
  bool approximate = false;  // LLL values, enumeration guard exceeded
};

LatticeMinima lattice_lambda1(const RankOneLattice& lat, EnumerationLimits limits = {});

struct MeshBound {
  double value = 0.0;
  bool approximate = false;
};

// d sqrt(d) / (lambda_1 * lambda_1 of the dual).
MeshBound mesh_ratio_bound(const RankOneLattice& lat, EnumerationLimits limits = {});
MeshBound mesh_ratio_bound(const LatticeMinima& m, std::size_t d);

// 1 / lambda_1 of the dual.
double spectral_test(const RankOneLattice& lat, EnumerationLimits limits = {});

// First `count` probe points: the 2^d cube corners, then Halton points and
// seeded uniform points, alternating. Longer sequences extend shorter ones.
PointSet covering_probes(std::size_t d, std::size_t count, std::uint64_t seed);

struct CoveringEstimate {
  double value = 0.0;  // lower bound on the covering radius
  std::size_t probes = 0;
};

CoveringEstimate covering_radius_estimate(const PointSet& ps, std::size_t probes,
                                          std::uint64_t seed, unsigned threads = 1);

// Coordinates i and j (0-based) of each point.
PointSet project(const PointSet& ps, std::size_t i, std::size_t j);

struct ProjectionDiagnostic {
  std::size_t i = 0, j = 0;
  std::int64_t gcd = 1;          // gcd(N, z_i, z_j)
  std::int64_t distinct = 0;     // distinct projected points
};

ProjectionDiagnostic projection_diagnostic(const RankOneLattice& lat, std::size_t i,
                                           std::size_t j);

// 2^d Gamma(1 + d/2) / pi^{d/2}
double minkowski_constant(std::size_t d);

struct DesignMetrics {
  std::int64_t n = 0;
  std::size_t d = 0;
  double q = 0.0;
  double q_times_n_pow = 0.0;  // q * N^{1/d}
  bool duplicates = false;
  double lambda1_primal = 0.0;
  double lambda1_dual = 0.0;
  double mesh_ratio_bound = 0.0;
  double spectral = 0.0;
  bool approximate = false;
  std::optional<double> covering_estimate;
  std::size_t covering_probes = 0;
};

struct MetricsOptions {
  std::size_t covering_probes = 0;  // 0 disables the estimate
  std::uint64_t seed = 0;
  unsigned threads = 1;
  EnumerationLimits limits;
};

DesignMetrics compute_metrics(const RankOneLattice& lat, const MetricsOptions& options = {});

void write_metrics_header(std::ostream& os);
void write_metrics_row(std::ostream& os, const DesignMetrics& m);

}  // namespace latdesign
