#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torfol/adjoint.hpp"
#include "torfol/error.hpp"
#include "torfol/lctset.hpp"

using namespace torfol;

namespace {

Rational q(long a, long b = 1) { return ratio(a, b); }

struct Affine {
  Fan fan;
  FoliationSpace w;
};

Affine acc(long n) {
  const auto lattice = AmbientLattice::generated_by(2, {{1, 0}, {0, 1}, {q(1, n), q(1, n)}});
  Fan fan(lattice, {{1, 0}, {0, 1}}, {{0, 1}});
  return {fan, FoliationSpace(lattice, {{0, 1}}, 0)};
}

Fan projective(std::size_t n) {
  std::vector<QVec> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  rays.push_back(QVec(n, Rational(-1)));
  std::vector<RaySet> cones;
  for (const auto& s : oracle::subsets(n + 1, n)) cones.push_back(s);
  return Fan(AmbientLattice::standard(n), rays, cones);
}

AdjointStructure at(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta, const Rational& t) {
  return {fan, w, delta, t};
}

}  // namespace

TEST(LogDiscrepancy, RaysAndAccPoint) {
  const auto f = projective(3);
  const FoliationSpace wa(f.lattice(), {{1, 0, 0}}, 1);
  for (const auto& r : f.rays()) EXPECT_EQ(adjoint_log_discrepancy(at(f, wa, TorusDivisor::zero(f), 0), r), 1);
  const TorusDivisor delta{{q(1, 3), 0, q(1, 2), 0}};
  for (const Rational& t : {q(0), q(1, 3), q(1)}) {
    const auto a = at(f, wa, delta, t);
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
      const Rational iota = wa.contains(f.ray(i)) ? 1 : 0;
      EXPECT_EQ(adjoint_log_discrepancy(a, f.ray(i)), t * iota + (1 - t) - delta.coeffs[i]);
    }
  }
  for (long n = 5; n <= 9; ++n) {
    const auto m = acc(n);
    for (const Rational& t : {q(0), q(1, 4), q(1, 2), q(1)}) {
      EXPECT_EQ(adjoint_log_discrepancy(at(m.fan, m.w, TorusDivisor::zero(m.fan), t), QVec{q(1, n), q(1, n)}),
                t / n + 2 * (1 - t) / n);
    }
  }
}

TEST(LogDiscrepancy, ZeroDivisorFromSubdivision) {
  const auto f = projective(3);
  const FoliationSpace wa(f.lattice(), {{1, 0, 0}}, 1);
  const auto z = find_zero_ld_divisor(f, wa);
  EXPECT_EQ(adjoint_log_discrepancy(at(f, wa, TorusDivisor::zero(f), 1), z.v0), 0);
}

TEST(DeltaLc, AccExample) {
  const auto m = acc(6);
  const auto zero = TorusDivisor::zero(m.fan);
  EXPECT_TRUE(is_delta_lc(at(m.fan, m.w, zero, q(1, 2)), q(1, 2)).holds);
  const auto r = is_delta_lc(at(m.fan, m.w, zero, q(1, 4)), q(1, 2));
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->point, (QVec{q(1, 6), q(1, 6)}));
  EXPECT_LT(r.witness->value, r.witness->threshold);
}

TEST(DeltaLc, SmoothTangentIsOneLc) {
  const Fan f(AmbientLattice::standard(3), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}});
  const auto full = FoliationSpace::full(f.lattice());
  for (const Rational& t : {q(0), q(1, 3), q(1)})
    EXPECT_TRUE(is_delta_lc(at(f, full, TorusDivisor::zero(f), t), 1).holds);
}

TEST(DeltaLc, RejectsBadInputs) {
  const auto m = acc(6);
  EXPECT_THROW(is_delta_lc(at(m.fan, m.w, TorusDivisor{{q(-1), 0}}, q(1, 2)), q(1, 2)), Error);
  EXPECT_THROW(is_delta_lc(at(m.fan, m.w, TorusDivisor::zero(m.fan), q(3, 2)), q(1, 2)), Error);
}

TEST(DeltaLc, AgreesWithBruteForce) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const auto inst = oracle::random_affine_instance(rng);
    const auto bf = oracle::brute_force_violations(inst.fan, inst.w, inst.delta, inst.t, inst.d);
    ASSERT_TRUE(bf.bounded);
    const auto r = is_delta_lc(at(inst.fan, inst.w, inst.delta, inst.t), inst.d);
    EXPECT_EQ(r.holds, bf.violations.empty()) << "instance " << i;
    if (!r.holds && r.witness) {
      EXPECT_TRUE(oracle::oracle_point_violates(inst.fan, inst.w, inst.delta, inst.t, inst.d, r.witness->point));
      EXPECT_EQ(r.witness->point, oracle::expected_witness(inst.fan, bf)) << "instance " << i;
    }
  }
}

TEST(DeltaLc, MonotoneInDelta) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const auto inst = oracle::random_affine_instance(rng);
    const auto a = at(inst.fan, inst.w, inst.delta, inst.t);
    if (is_delta_lc(a, inst.d).holds) {
      EXPECT_TRUE(is_delta_lc(a, inst.d / 2).holds);
      EXPECT_TRUE(is_delta_lc(a, inst.d / 7).holds);
    }
  }
}

TEST(LctInterval, AccFamily) {
  for (long n = 5; n <= 20; ++n) {
    const auto m = acc(n);
    const auto r = lct_interval(m.fan, m.w, TorusDivisor::zero(m.fan), q(1, 2));
    ASSERT_FALSE(r.empty);
    EXPECT_EQ(r.lo, ratio(n - 4, n - 2)) << n;
    EXPECT_EQ(r.hi, 1);
    EXPECT_TRUE(r.lo_attained);
    EXPECT_TRUE(r.hi_attained);
  }
}

TEST(LctInterval, DensityFamilyUpperEndpoint) {
  std::size_t checked = 0;
  for (const Rational& d : {q(1, 2), q(1, 3), q(2, 5)}) {
    for (std::size_t s = 3; s <= 9; ++s) {
      for (std::size_t k = 1; k < s; ++k) {
        if (!density_k_valid(d, s, k)) continue;
        const auto inst = density_family(d, s, k, 2, 1);
        const auto r = lct_interval(inst.fan, inst.w, TorusDivisor::zero(inst.fan), d);
        ASSERT_FALSE(r.empty);
        EXPECT_EQ(r.lo, 0);
        EXPECT_EQ(r.hi, inst.expected_b) << "s=" << s << " k=" << k;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10u);
}

TEST(LctInterval, SmoothCoordinateFoliation) {
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<QVec> rays;
    RaySet all;
    for (std::size_t i = 0; i < n; ++i) {
      rays.push_back(unit_vector(n, i));
      all.push_back(i);
    }
    const Fan f(AmbientLattice::standard(n), rays, {all});
    for (std::size_t r = 0; r <= n; ++r) {
      const FoliationSpace w(f.lattice(), std::vector<QVec>(rays.begin(), rays.begin() + static_cast<long>(r)), 0);
      const auto i = lct_interval(f, w, TorusDivisor::zero(f), q(1, 2));
      ASSERT_FALSE(i.empty);
      EXPECT_EQ(i.lo, 0);
    }
  }
}

TEST(LctInterval, MatchesPointwiseDecision) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(0, 100);
  for (int i = 0; i < 80; ++i) {
    const auto inst = oracle::random_affine_instance(rng);
    const auto r = lct_interval(inst.fan, inst.w, inst.delta, inst.d);
    std::vector<Rational> ts;
    for (int j = 0; j < 10; ++j) ts.push_back(ratio(num(rng), 100));
    if (!r.empty) {
      for (const Rational& e : {r.lo, r.hi}) {
        ts.push_back(e);
        ts.push_back(e - q(1, 1000));
        ts.push_back(e + q(1, 1000));
      }
    }
    for (const auto& t : ts) {
      if (t < 0 || t > 1) continue;
      EXPECT_EQ(r.contains(t), is_delta_lc(at(inst.fan, inst.w, inst.delta, t), inst.d).holds)
          << "instance " << i << " t=" << t;
    }
  }
}

TEST(LctInterval, LowerEndpointBracketedByBisection) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 15; ++i) {
    const auto inst = oracle::random_affine_instance(rng);
    const auto r = lct_interval(inst.fan, inst.w, inst.delta, inst.d);
    if (r.empty || r.lo == 0 || r.hi != 1) continue;
    const auto pred = [&](const Rational& t) { return is_delta_lc(at(inst.fan, inst.w, inst.delta, t), inst.d).holds; };
    if (pred(0)) continue;
    const auto [lo, hi] = oracle::bisect(pred, 0, 1, 12);
    EXPECT_LE(lo, r.lo);
    EXPECT_GE(hi, r.lo);
    ++checked;
  }
  EXPECT_GT(checked, 3);
}

TEST(ClosedForm, MatchesEnumerationAndInterval) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 120; ++i) {
    const auto inst = oracle::random_affine_instance(rng, true);
    const auto l = closed_form_lower_lct(inst.fan, inst.w, inst.d);
    EXPECT_EQ(l.value, oracle::oracle_closed_form_lower(inst.fan, inst.w, inst.d)) << "instance " << i;
    const auto r = lct_interval(inst.fan, inst.w, TorusDivisor::zero(inst.fan), inst.d);
    if (!r.empty) EXPECT_EQ(r.lo, l.value) << "instance " << i;
  }
}

TEST(ClosedForm, AccFamily) {
  for (long n = 5; n <= 12; ++n) {
    const auto m = acc(n);
    const auto l = closed_form_lower_lct(m.fan, m.w, q(1, 2));
    EXPECT_EQ(l.value, ratio(n - 4, n - 2));
    ASSERT_TRUE(l.maximizer.has_value());
    EXPECT_EQ(*l.maximizer, (QVec{q(1, n), q(1, n)}));
  }
}

TEST(TangentCheck, Examples) {
  const auto f = projective(3);
  const FoliationSpace wa(f.lattice(), {{1, 0, 0}}, 1);
  const auto c = check_t1_forces_tangent(f, wa, q(1, 10));
  EXPECT_FALSE(c.lc_at_one);
  EXPECT_TRUE(c.implication_holds);
  const auto full = check_t1_forces_tangent(f, FoliationSpace::full(f.lattice()), 1);
  EXPECT_TRUE(full.tangent);
  EXPECT_TRUE(full.implication_holds);
}

TEST(TangentCheck, FanoCorpusNeverLcAtOne) {
  for (const auto& inst : oracle::fano_corpus(123, 30)) {
    if (inst.w.is_everything()) continue;
    for (const Rational& d : {q(1, 10), q(1, 2), q(1)}) {
      EXPECT_FALSE(is_delta_lc(at(inst.fan, inst.w, TorusDivisor::zero(inst.fan), 1), d).holds) << inst.label;
      EXPECT_TRUE(check_t1_forces_tangent(inst.fan, inst.w, d).implication_holds) << inst.label;
    }
  }
}

TEST(Certificate, ProjectivePlaneTangent) {
  const auto f = projective(2);
  const auto c = boundedness_certificate(f, FoliationSpace::full(f.lattice()), TorusDivisor::zero(f), 0, 0, 1);
  EXPECT_EQ(c.lambda, 2);
  EXPECT_EQ(c.scale, 2);
  EXPECT_TRUE(c.delta_prime_lc);
  EXPECT_EQ(c.delta_prime, TorusDivisor::zero(f));
  // 2 conv(e1, e2, -e1-e2) contains e1, so the enumeration reports a witness.
  ASSERT_FALSE(c.valid());
  EXPECT_FALSE(is_zero(*c.witness));
  EXPECT_TRUE(c.p.contains(scale(*c.witness, ratio(1, 2))));
  EXPECT_EQ(c.points.size(), 10u);
}

TEST(Certificate, ProjectiveSpaceHalf) {
  const auto f = projective(3);
  const FoliationSpace wa(f.lattice(), {{1, 0, 0}}, 1);
  const Rational d = q(1, 10);
  const auto c = boundedness_certificate(f, wa, TorusDivisor::zero(f), q(1, 2), q(1, 2), d);
  const Rational lambda = std::min(Rational(q(1, 2) + q(1, 2) * d), Rational(q(1, 2) * (1 + d)));
  EXPECT_EQ(c.lambda, lambda);
  EXPECT_EQ(c.scale, lambda * q(1, 4) * d);
  EXPECT_TRUE(c.valid());
  for (const auto& p : c.points) EXPECT_TRUE(is_zero(p));
}

TEST(Certificate, AffinePieceFailsAmpleness) {
  const auto m = acc(6);
  EXPECT_THROW(boundedness_certificate(m.fan, m.w, TorusDivisor::zero(m.fan), 0, q(1, 2), q(1, 2)), Error);
}
