#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "latdesign/lattice_core.hpp"
#include "latdesign/rng.hpp"

using namespace latdesign;

TEST(RankOneLattice, RejectsInvalid) {
  EXPECT_THROW(RankOneLattice(0, {1}), std::invalid_argument);
  EXPECT_THROW(RankOneLattice(5, {}), std::invalid_argument);
  EXPECT_THROW(RankOneLattice(6, {2, 4}), std::invalid_argument);
  EXPECT_NO_THROW(RankOneLattice(6, {2, 3}));
}

TEST(RankOneLattice, KorobovVector) {
  EXPECT_EQ(korobov_vector(3, 7, 2), (std::vector<std::int64_t>{1, 3}));
  EXPECT_EQ(korobov_vector(3, 7, 4), (std::vector<std::int64_t>{1, 3, 2, 6}));
  EXPECT_EQ(RankOneLattice::korobov(8, 13, 3).z(), (std::vector<std::int64_t>{1, 8, 12}));
}

TEST(RankOneLattice, CoprimeIndex) {
  EXPECT_EQ(RankOneLattice(138, {17, 36, 57, 81, 108}).coprime_index(), 0u);
  EXPECT_EQ(RankOneLattice(6, {2, 3}).coprime_index(), std::nullopt);
}

TEST(Bases, ExplicitFormN7) {
  const RankOneLattice lat(7, {1, 3});
  const IntegerBasis p = primal_basis(lat);
  EXPECT_EQ(p.scale_num, 1);
  EXPECT_EQ(p.scale_den, 7);
  EXPECT_EQ(abs(determinant(p)), BigInt(7));
  const IntegerBasis d = dual_basis(lat);
  EXPECT_EQ(abs(determinant(d)), BigInt(7));
  const std::int64_t h[2] = {-3, 1};
  EXPECT_TRUE(in_integer_span(d, h));
}

TEST(Bases, NOneIsIdentity) {
  const RankOneLattice lat(1, {0, 0, 0});
  EXPECT_EQ(primal_basis(lat), IntegerBasis::identity(3));
  EXPECT_EQ(dual_basis(lat), IntegerBasis::identity(3));
}

namespace {

// Checks membership of the generators in both directions.
void expect_generates(const IntegerBasis& b, const RankOneLattice& lat) {
  const std::size_t d = lat.dim();
  std::vector<std::int64_t> v = lat.reduced_z();
  EXPECT_TRUE(in_integer_span(b, v));
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<std::int64_t> e(d, 0);
    e[k] = lat.n();
    EXPECT_TRUE(in_integer_span(b, e));
  }
}

}  // namespace

TEST(Bases, NonCoprimeUsesHermiteForm) {
  const RankOneLattice lat(6, {2, 3});
  const IntegerBasis p = primal_basis(lat);
  EXPECT_EQ(p.scale_den, 6);
  EXPECT_EQ(abs(determinant(p)), BigInt(6));
  expect_generates(p, lat);
  const IntegerBasis d = dual_basis(lat);
  EXPECT_EQ(abs(determinant(d)), BigInt(6));
  for (std::size_t j = 0; j < 2; ++j) {
    const auto c = d.column(j);
    EXPECT_EQ(mod_floor(c[0] * 2 + c[1] * 3, 6), 0);
  }
}

TEST(Bases, ExplicitAndHermiteAgreeOnRandomLattices) {
  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng.next_u64() % 400);
    const std::size_t d = 2 + rng.next_u64() % 4;
    std::vector<std::int64_t> z(d);
    for (auto& v : z) v = static_cast<std::int64_t>(rng.next_u64() % n);
    z[0] = 1;
    const RankOneLattice lat(n, z);
    const IntegerBasis p = primal_basis(lat);
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t j = 0; j < d; ++j) cols.emplace_back(p.column(j).begin(), p.column(j).end());
    EXPECT_EQ(hermite_basis(cols, d, n), hermite_basis({lat.reduced_z()}, d, n));
    const IntegerBasis du = dual_basis(lat);
    BigInt np = 1;
    for (std::size_t k = 1; k < d; ++k) np *= n;
    EXPECT_EQ(abs(determinant(p)), np);
    EXPECT_EQ(abs(determinant(du)), BigInt(n));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        __int128 s = 0;
        for (std::size_t k = 0; k < d; ++k) s += static_cast<__int128>(p(k, i)) * du(k, j);
        EXPECT_EQ(static_cast<std::int64_t>(s % n), 0);
      }
    }
  }
}

TEST(Points, KorobovN5) {
  const PointSet ps = generate_points(RankOneLattice(5, {1, 3}));
  ASSERT_EQ(ps.size(), 5u);
  EXPECT_DOUBLE_EQ(ps.point(1)[0], 0.2);
  EXPECT_DOUBLE_EQ(ps.point(1)[1], 0.6);
  EXPECT_DOUBLE_EQ(ps.point(2)[1], 0.2);
  std::set<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < 5; ++i) rows.emplace(ps.point(i)[0], ps.point(i)[1]);
  EXPECT_EQ(rows.size(), 5u);
}

TEST(Points, UnreducedZGivesSamePoints) {
  EXPECT_EQ(generate_points(RankOneLattice(7, {8, 10})).coords,
            generate_points(RankOneLattice(7, {1, 3})).coords);
}

TEST(Points, ShiftStaysInCube) {
  const PointSet ps = generate_points(RankOneLattice(7, {1, 3}), std::vector<double>{0.9, 0.5});
  for (double x : ps.coords) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_THROW(generate_points(RankOneLattice(7, {1, 3}), std::vector<double>{1.0, 0.0}),
               std::invalid_argument);
}

TEST(Points, CsvFormat) {
  std::ostringstream os;
  write_points_csv(os, generate_points(RankOneLattice(3, {1, 2})));
  EXPECT_EQ(os.str(),
            "x1,x2\n0,0\n0.33333333333333331,0.66666666666666663\n"
            "0.66666666666666663,0.33333333333333331\n");
}

TEST(Arithmetic, ModularInverse) {
  EXPECT_EQ(modular_inverse(3, 7), 5);
  EXPECT_THROW(modular_inverse(2, 6), std::invalid_argument);
}
