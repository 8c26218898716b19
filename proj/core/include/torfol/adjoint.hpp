#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torfol/divisor.hpp"
#include "torfol/fan.hpp"
#include "torfol/foliation.hpp"

namespace torfol {

struct AdjointStructure {
  Fan fan;
  FoliationSpace w;
  TorusDivisor delta;  // effective
  Rational t;          // in [0, 1]
};

// Throws InvalidDivisor / InvalidArgument when delta is not effective or t is outside [0, 1].
void validate(const AdjointStructure& a);

// K_t = t K_F + (1 - t) K_X + Delta.
TorusDivisor adjoint_canonical_divisor(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta,
                                       const Rational& t);

Rational adjoint_log_discrepancy(const AdjointStructure& a, std::span<const Rational> v);

struct Violation {
  QVec point;
  Rational value;      // phi_{K_t}(point)
  Rational threshold;  // delta or (1 - t) delta
  RaySet cone;         // maximal cone where it was found
};

struct DeltaLcResult {
  bool holds = true;
  std::optional<Violation> witness;
};

DeltaLcResult is_delta_lc(const AdjointStructure& a, const Rational& delta);

// Closed subinterval of [0, 1], or empty.
struct TInterval {
  bool empty = true;
  Rational lo = 0, hi = 0;
  bool lo_attained = false, hi_attained = false;

  static TInterval unit() { return {false, 0, 1, true, true}; }
  static TInterval none() { return {}; }
  bool contains(const Rational& t) const { return !empty && lo <= t && t <= hi; }
  friend bool operator==(const TInterval&, const TInterval&) = default;
};

TInterval intersect(const TInterval& a, const TInterval& b);
// {t in [0, 1] : g0 + t (g1 - g0) >= 0}.
TInterval affine_interval(const Rational& g0, const Rational& g1);

// {t in [0, 1] : (fan, W, Delta, t) is delta-lc}, exactly.
TInterval lct_interval(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta, const Rational& d);
TInterval lct_interval_cone(const Fan& fan, std::size_t max_cone, const FoliationSpace& w, const TorusDivisor& delta,
                            const Rational& d);

struct ClosedFormLower {
  Rational value = 0;
  std::optional<QVec> maximizer;  // the v attaining the maximum when it is positive
  QVec coefficients;              // maximizer in the rays of `cone`
  RaySet cone;
};

// max{0, (d - phi_{K_X}(v)) / (d - (phi_{K_X}(v) - phi_{K_F}(v))) : v in S} with Delta = 0,
// maximized over maximal cones.
ClosedFormLower closed_form_lower_lct(const Fan& fan, const FoliationSpace& w, const Rational& d);
ClosedFormLower closed_form_lower_lct_cone(const Fan& fan, std::size_t max_cone, const FoliationSpace& w,
                                           const Rational& d);

struct TangentCheck {
  bool lc_at_one = false;
  bool tangent = false;  // W = N
  bool implication_holds = true;
  std::optional<Violation> witness;
};

TangentCheck check_t1_forces_tangent(const Fan& fan, const FoliationSpace& w, const Rational& d);

struct BoundednessCertificate {
  std::vector<QVec> vertices;  // ray generators spanning P
  Polytope p;
  Rational lambda, scale;
  std::vector<QVec> points;  // lattice points of scale * P
  std::optional<QVec> witness;
  TorusDivisor delta_prime;  // K_{t2} - K_X
  bool delta_prime_lc = false;
  bool valid() const { return !witness.has_value(); }
};

BoundednessCertificate boundedness_certificate(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta,
                                               const Rational& t1, const Rational& t2, const Rational& d);

// Primitive points x of the cone (x != 0) with sum lambda_i c_i < bound, where x = sum lambda_i v_i.
// The cone must be simplicial and every c_i positive. Sorted lexicographically.
struct ConePoint {
  QVec x;
  QVec lambda;
};
std::vector<ConePoint> cone_points_below(const AmbientLattice& lattice, const std::vector<QVec>& rays,
                                         const QVec& c, const Rational& bound, bool primitive_only = true);

}  // namespace torfol
