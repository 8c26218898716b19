#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "torfol/adjoint.hpp"
#include "torfol/fan.hpp"
#include "torfol/foliation.hpp"

namespace torfol::oracle {

// Primitive generator of the ray through v, computed from lattice coordinates directly.
QVec oracle_primitive(const AmbientLattice& n, const QVec& v);
bool oracle_in_w(const FoliationSpace& w, const QVec& v);

struct BruteForce {
  bool bounded = true;             // false when some generator has phi <= 0 (region not a box)
  std::vector<QVec> violations;    // primitive violators, lexicographic
  std::size_t points_scanned = 0;
};

// Independent delta-lc check on one simplicial maximal cone: box over lattice coordinates.
BruteForce brute_force_violations(const Fan& fan, std::size_t max_cone, const FoliationSpace& w,
                                  const TorusDivisor& delta, const Rational& t, const Rational& d);
// Brute force over every maximal cone.
BruteForce brute_force_violations(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta,
                                  const Rational& t, const Rational& d);
// The reported witness: the least violating ray generator if any, else the least violation.
QVec expected_witness(const Fan& fan, const BruteForce& bf);
// Checks the lc condition at one point from the definitions (K_t coefficients, thresholds).
bool oracle_point_violates(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta, const Rational& t,
                           const Rational& d, const QVec& x);

// max{0, (d - phi_X(v)) / (d - (phi_X(v) - phi_F(v))) : v in S}, Delta = 0, by enumeration.
Rational oracle_closed_form_lower(const Fan& fan, const FoliationSpace& w, const Rational& d);

// With pred(lo_false) false and pred(hi_true) true, halves the bracket `steps` times.
std::pair<Rational, Rational> bisect(const std::function<bool(const Rational&)>& pred, Rational lo_false,
                                     Rational hi_true, int steps);

// Majority over `samples` random rational complements for the generic part of W.
bool oracle_singular(const Fan& fan, const RaySet& tau, const FoliationSpace& w, std::mt19937_64& rng,
                     int samples = 20);
// Relint(tau) ∩ W ∩ N nonempty and tau not inside W, via the kernel of the projection.
std::optional<bool> oracle_dicritical(const Fan& fan, const RaySet& tau, const FoliationSpace& w);

struct FanInstance {
  Fan fan;
  FoliationSpace w;
  std::string label;
};

struct AffineInstance {
  Fan fan;
  FoliationSpace w;
  TorusDivisor delta;
  Rational t, d;
};

// Random single-cone instance in a superlattice of Z^n with every generator having phi_{K_t} > 0.
AffineInstance random_affine_instance(std::mt19937_64& rng, bool zero_boundary = false);
// Complete simplicial fans (fake weighted projective spaces, random 2d fans, star subdivisions)
// with random rational W, filtered to is_fano; deterministic for a seed.
std::vector<FanInstance> fano_corpus(std::uint64_t seed, std::size_t count);

struct FractionalTuple {
  QVec x;
  std::size_t s = 0, l = 0;
  Rational d;
};

// x in (0,1)^s with 2 <= s <= 3, l < s, entries over a shared denominator so (2a) is often met.
FractionalTuple random_fractional_tuple(std::mt19937_64& rng);

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace torfol::oracle
