#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torfol/error.hpp"
#include "torfol/lattice.hpp"

using namespace torfol;

namespace {

AmbientLattice acc_lattice(long n) {
  return AmbientLattice::generated_by(2, {{1, 0}, {0, 1}, {ratio(1, n), ratio(1, n)}});
}

ZMatrix zrows(const std::vector<std::vector<long>>& rows) {
  ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Integer zdet(const ZMatrix& u) { return determinant(to_rational_matrix(u)).get_num(); }

}  // namespace

TEST(Hermite, IdentityAndZero) {
  const auto id = zrows({{1, 0}, {0, 1}});
  const auto h = hermite_normal_form(id);
  EXPECT_EQ(h.h, id);
  EXPECT_EQ(h.u * id, h.h);
  const auto zero = zrows({{0, 0}, {0, 0}});
  const auto hz = hermite_normal_form(zero);
  EXPECT_EQ(hz.h, zero);
  EXPECT_EQ(abs(zdet(hz.u)), 1);
}

TEST(Hermite, SmallMatrixUnimodular) {
  const auto m = zrows({{2, 4}, {1, 3}});
  const auto h = hermite_normal_form(m);
  EXPECT_EQ(h.u * m, h.h);
  EXPECT_EQ(abs(zdet(h.u)), 1);
  EXPECT_GT(h.h(0, 0), 0);
  EXPECT_GT(h.h(1, 1), 0);
  EXPECT_EQ(h.h(1, 0), 0);
  EXPECT_GE(h.h(0, 1), 0);
  EXPECT_LT(h.h(0, 1), h.h(1, 1));
}

TEST(Hermite, RandomMatricesSatisfyDefinition) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    ZMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
    const auto h = hermite_normal_form(m);
    ASSERT_EQ(h.u * m, h.h);
    ASSERT_EQ(abs(zdet(h.u)), 1);
  }
}

TEST(Lattice, IntegerKernel) {
  const auto k = integer_kernel(zrows({{1, 1, 1}}));
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(v[0] + v[1] + v[2], 0);
}

TEST(Primitive, GcdReduction) {
  const auto z2 = AmbientLattice::standard(2);
  EXPECT_EQ(primitive(QVec{2, 4}, z2), (QVec{1, 2}));
  EXPECT_EQ(primitive(QVec{ratio(1, 3), ratio(2, 3)}, z2), (QVec{1, 2}));
}

TEST(Primitive, SuperlatticeDiagonal) {
  const auto n = acc_lattice(5);
  EXPECT_EQ(primitive(QVec{1, 1}, n), (QVec{ratio(1, 5), ratio(1, 5)}));
  EXPECT_EQ(primitive(QVec{1, 0}, n), (QVec{1, 0}));
  // no point (a + c/5, c/5) with 0 < a + c/5 < 1 lies on the ray through (1, 0)
  for (long c = -5; c <= 5; ++c)
    for (long a = -2; a <= 2; ++a) {
      const Rational x = Rational(a) + ratio(c, 5), y = ratio(c, 5);
      if (y == 0 && x > 0 && x < 1) ADD_FAILURE() << x;
    }
}

TEST(Primitive, Errors) {
  const auto z2 = AmbientLattice::standard(2);
  EXPECT_THROW(primitive(QVec{0, 0}, z2), Error);
}

TEST(Primitive, IdempotentAndScaleInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-7, 7), d(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const long den = d(rng);
    const auto n = AmbientLattice::generated_by(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {ratio(e(rng), den), ratio(e(rng), den), ratio(1, den)}});
    QVec v{e(rng), e(rng), e(rng)};
    if (is_zero(v)) continue;
    const auto p = primitive(v, n);
    EXPECT_EQ(primitive(p, n), p);
    EXPECT_EQ(primitive(scale(v, ratio(d(rng), d(rng))), n), p);
    EXPECT_EQ(p, oracle::oracle_primitive(n, v));
  }
}

TEST(Saturate, Examples) {
  const auto z2 = AmbientLattice::standard(2);
  const auto s = saturate({{2, 0}}, z2);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (QVec{1, 0}));
  EXPECT_TRUE(saturate({}, z2).empty());

  const auto z3 = AmbientLattice::standard(3);
  const auto b = saturate({{0, 2, 1}, {2, 0, 1}}, z3);
  ASSERT_EQ(b.size(), 2u);
  const auto q = QMatrix::from_columns(b, 3);
  const auto coeffs = solve(q, QVec{1, 1, 1});
  ASSERT_TRUE(coeffs);
  for (const auto& c : *coeffs) EXPECT_TRUE(is_integral(c));
  EXPECT_EQ(saturate(b, z3), b);
}

TEST(Saturate, IdempotentAndSameSpan) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-4, 4);
  const auto n = acc_lattice(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<QVec> g{{e(rng), e(rng)}};
    if (is_zero(g[0])) continue;
    const auto s = saturate(g, n);
    EXPECT_EQ(saturate(s, n), s);
    EXPECT_EQ(rank(s, 2), 1u);
    EXPECT_TRUE(in_span(s, g[0], 2));
  }
}

TEST(IndexOf, Examples) {
  EXPECT_EQ(index_of(QVec{ratio(1, 5), ratio(1, 5)}), 5);
  EXPECT_EQ(index_of(QVec{1, 2, 3}), 1);
  EXPECT_EQ(index_of(QVec{ratio(1, 4), ratio(1, 6)}), 12);
  EXPECT_EQ(index_of(QVec{}), 1);
}

TEST(Enumerate, Triangle) {
  Polytope p{2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 1}}};
  const auto pts = enumerate_lattice_points(p, AmbientLattice::standard(2));
  EXPECT_EQ(pts, (std::vector<QVec>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(Enumerate, SquareInHalfLattice) {
  const auto n = AmbientLattice::generated_by(2, {{1, 0}, {0, 1}, {ratio(1, 2), ratio(1, 2)}});
  Polytope p{2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}};
  EXPECT_EQ(enumerate_lattice_points(p, n).size(), 13u);
}

TEST(Enumerate, StrictSmallTriangle) {
  Polytope p{2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, ratio(1, 3), true}}};
  EXPECT_EQ(enumerate_lattice_points(p, AmbientLattice::standard(2)), (std::vector<QVec>{{0, 0}}));
}

TEST(Enumerate, UnboundedThrows) {
  Polytope p{2, {{{-1, 0}, 0}, {{0, -1}, 0}}};
  try {
    enumerate_lattice_points(p, AmbientLattice::standard(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedRegion);
  }
}

TEST(Enumerate, AgreesWithBoxScan) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> e(-3, 3), d(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const long den = d(rng);
    const auto n = AmbientLattice::generated_by(2, {{1, 0}, {0, 1}, {ratio(e(rng), den), ratio(1, den)}});
    Polytope p{2, {}};
    p.halfspaces.push_back({{1, 0}, ratio(e(rng) + 4, 2)});
    p.halfspaces.push_back({{-1, 0}, ratio(e(rng) + 4, 2)});
    p.halfspaces.push_back({{0, 1}, ratio(e(rng) + 4, 3)});
    p.halfspaces.push_back({{0, -1}, ratio(e(rng) + 4, 3)});
    p.halfspaces.push_back({{e(rng), e(rng)}, Rational(e(rng) + 3), trial % 2 == 0});
    const auto got = enumerate_lattice_points(p, n);
    // independent scan of B z over a generous integer box
    std::vector<QVec> want;
    const auto& b = n.basis();
    for (long z0 = -40; z0 <= 40; ++z0)
      for (long z1 = -40; z1 <= 40; ++z1) {
        const QVec x = b.apply(QVec{z0, z1});
        if (p.contains(x)) want.push_back(x);
      }
    std::sort(want.begin(), want.end(), [&](const QVec& a, const QVec& c) { return lex_less(n.to_coords(a), n.to_coords(c)); });
    ASSERT_EQ(got, want) << "trial " << trial;
  }
}

TEST(Hull, FacetsOfSimplex) {
  const std::vector<QVec> pts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
  const auto p = convex_hull(pts, 3);
  EXPECT_EQ(p.halfspaces.size(), 4u);
  EXPECT_TRUE(p.contains(QVec{0, 0, 0}));
  EXPECT_FALSE(p.contains(QVec{1, 1, 0}));
  EXPECT_TRUE(in_convex_hull(pts, QVec{ratio(1, 2), ratio(1, 2), 0}));
}
