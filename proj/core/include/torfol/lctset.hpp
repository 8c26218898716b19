#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torfol/adjoint.hpp"

namespace torfol {

// Sum of the fractional parts of the first l entries.
Rational psi(std::span<const Rational> x, std::size_t l);
// 1 iff psi_s(y) = psi_l(y).
int iota(std::span<const Rational> y, std::size_t s, std::size_t l);

Rational t_value(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta);

enum class MembershipCondition { None, Domain, IndexDivisibility, PsiBound, Periodic };
std::string to_string(MembershipCondition c);

struct MembershipReport {
  bool member = false;
  MembershipCondition violated = MembershipCondition::None;
  std::optional<std::size_t> index;  // entry i for the divisibility condition
  std::optional<Integer> m;          // multiplier for the periodic condition
  Rational t;                        // t_value(x) when defined
};

// Decides x ∈ delta-V_{s,l}. The inequality over all integers m is checked over the
// residues m mod index(x), skipping m ≡ 0 (where m x is integral).
MembershipReport is_member_V(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta);
// Same inequality scanned over 0 < |m| <= bound with m x not integral; used as a cross-check.
MembershipReport is_member_V_scan(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta,
                                  const Integer& bound);

struct DensityInstance {
  Rational delta;
  std::size_t s = 0, k = 0, n = 0, r = 0;
  std::size_t m = 0;    // floor(1 / delta)
  Fan fan;              // first orthant in N = Z^n + Z((1 - m/s) e1 + (1/s) e2)
  FoliationSpace w;     // W ∩ N = Z w_k, generic part of dimension r - 1
  QVec generator;       // w_k
  Rational q;           // ceil(k m / s) - k m / s + k / s
  Rational expected_b;  // (q - delta) / q
};

// Requires w_k primitive in N (otherwise W cap N = Z w_k is impossible).
DensityInstance density_family(const Rational& delta, std::size_t s, std::size_t k, std::size_t n, std::size_t r);
// The preconditions of density_family on (delta, s, k).
bool density_k_valid(const Rational& delta, std::size_t s, std::size_t k);

// Lattice Z^n + Z (x, 0...), first orthant, W = span(e_1..e_l).
struct AffineModel {
  Fan fan;
  FoliationSpace w;
};
AffineModel affine_model(std::span<const Rational> x, std::size_t n, std::size_t l);

struct LowerCertificate {
  Rational value;              // the lower endpoint being certified
  std::size_t s = 0, l = 0;
  QVec x;
  std::vector<std::size_t> permutation;  // ray indices of the fan, W-rays first
  MembershipReport membership;
  bool fallback = false;  // value 1 certified by (1/k, 1/k) in delta-L_{2,0}
  bool certified() const { return membership.member && membership.t == value; }
};

// Certifies a positive closed-form lower endpoint into some delta-L_{s,l}.
LowerCertificate certify_lower_endpoint(const Fan& fan, const FoliationSpace& w, const ClosedFormLower& lower,
                                        const Rational& delta);

}  // namespace torfol
