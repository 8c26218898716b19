#include <gtest/gtest.h>

#include "torfol/error.hpp"
#include "torfol/lp.hpp"
#include "torfol/matrix.hpp"
#include "torfol/rational.hpp"

using namespace torfol;

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational(" +7/21 "), ratio(1, 3));
}

TEST(Rational, RejectsDecimalsWithHint) {
  try {
    parse_rational("0.5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("p/q"), std::string::npos);
  }
  EXPECT_THROW(parse_rational("1e3"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("a/2"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, FloorCeilFracOnNegatives) {
  EXPECT_EQ(floor(ratio(-1, 3)), -1);
  EXPECT_EQ(ceil(ratio(-1, 3)), 0);
  EXPECT_EQ(frac(ratio(-1, 3)), ratio(2, 3));
  EXPECT_EQ(frac(ratio(7, 3)), ratio(1, 3));
  EXPECT_EQ(floor(Rational(4)), 4);
}

TEST(Rational, CommonDenominatorAndLex) {
  const QVec v{ratio(1, 4), ratio(1, 6)};
  EXPECT_EQ(common_denominator(v), 12);
  EXPECT_TRUE(lex_less(QVec{0, 1}, QVec{1, 0}));
  EXPECT_FALSE(lex_less(QVec{1, 0}, QVec{1, 0}));
}

TEST(Matrix, RankNullspaceInverse) {
  const auto m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(m), 2u);
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  const auto img = m.apply(ns[0]);
  EXPECT_TRUE(is_zero(img));
  EXPECT_FALSE(inverse(m).has_value());

  const auto a = QMatrix::from_rows({{2, 1}, {1, 1}});
  const auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, QMatrix::identity(2));
  EXPECT_EQ(determinant(a), 1);
}

TEST(Matrix, SolveConsistentAndInconsistent) {
  const auto m = QMatrix::from_rows({{1, 1}, {1, -1}});
  const auto x = solve(m, QVec{3, 1});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (QVec{2, 1}));
  const auto singular = QMatrix::from_rows({{1, 1}, {2, 2}});
  EXPECT_FALSE(solve(singular, QVec{1, 3}));
}

TEST(Matrix, AnnihilatorCutsOutSpan) {
  const std::vector<QVec> span{{2, 0, 1}, {0, 2, 1}};
  const auto eq = annihilator(span, 3);
  ASSERT_EQ(eq.size(), 1u);
  for (const auto& v : span) EXPECT_EQ(dot(eq[0], v), 0);
  EXPECT_TRUE(in_span(span, QVec{1, 1, 1}, 3));
  EXPECT_FALSE(in_span(span, QVec{1, 0, 0}, 3));
}

TEST(Lp, OptimumOfSmallProgram) {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0
  std::vector<LinearConstraint> c{{{1, 2}, Relation::LessEqual, 4},
                                  {{3, 1}, Relation::LessEqual, 6},
                                  {{1, 0}, Relation::GreaterEqual, 0},
                                  {{0, 1}, Relation::GreaterEqual, 0}};
  const auto s = optimize(2, c, QVec{1, 1}, true);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.value, ratio(14, 5));
}

TEST(Lp, InfeasibleAndUnbounded) {
  std::vector<LinearConstraint> c{{{1}, Relation::GreaterEqual, 2}, {{1}, Relation::LessEqual, 1}};
  EXPECT_EQ(optimize(1, c, QVec{1}, true).status, LpStatus::Infeasible);
  std::vector<LinearConstraint> u{{{1}, Relation::GreaterEqual, 0}};
  EXPECT_EQ(optimize(1, u, QVec{1}, true).status, LpStatus::Unbounded);
}

TEST(Lp, StrictConstraints) {
  // 0 < x < 1 has points; x > 1 and x < 1 does not; x >= 1, x <= 1, x > 0 has x = 1.
  EXPECT_TRUE(feasible(1, {{{1}, Relation::Greater, 0}, {{1}, Relation::Less, 1}}));
  EXPECT_FALSE(feasible(1, {{{1}, Relation::Greater, 1}, {{1}, Relation::Less, 1}}));
  const auto p = find_point(1, {{{1}, Relation::Equal, 1}, {{1}, Relation::Greater, 0}});
  ASSERT_TRUE(p);
  EXPECT_EQ((*p)[0], 1);
}
