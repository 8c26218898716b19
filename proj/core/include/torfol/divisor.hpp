#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "torfol/fan.hpp"

namespace torfol {

// D = sum a_rho D_rho; coeffs[i] is the coefficient of the i-th ray of the fan.
struct TorusDivisor {
  QVec coeffs;

  static TorusDivisor zero(const Fan& fan) { return {QVec(fan.num_rays(), Rational(0))}; }
  friend bool operator==(const TorusDivisor&, const TorusDivisor&) = default;
};

TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b);
TorusDivisor operator-(const TorusDivisor& a);
TorusDivisor operator*(const Rational& s, const TorusDivisor& d);

// Covector m_sigma for each maximal cone (in fan.maximal_cones() order),
// with m_sigma . v_rho = -a_rho on the rays of sigma.
struct SupportFunction {
  std::vector<QVec> covectors;
};

SupportFunction support_function(const Fan& fan, const TorusDivisor& d);
Rational evaluate(const Fan& fan, const SupportFunction& phi, std::span<const Rational> v);

TorusDivisor canonical_divisor(const Fan& fan);

struct CollectionInequality {
  RaySet collection;
  QVec sum;               // u_1 + ... + u_k
  Rational value_of_sum;  // phi(u_1 + ... + u_k)
  Rational sum_of_values; // phi(u_1) + ... + phi(u_k)
  bool strict() const { return value_of_sum > sum_of_values; }
};

// Primitive-collection inequalities for phi; requires a complete simplicial fan.
std::vector<CollectionInequality> collection_inequalities(const Fan& fan, const SupportFunction& phi);

bool is_ample(const Fan& fan, const TorusDivisor& d);
bool is_nonpositive(const Fan& fan, const SupportFunction& phi);
bool is_strictly_convex(const Fan& fan, const SupportFunction& phi);

// The cone on which a non-positive strictly convex phi vanishes.
RaySet zero_cone(const Fan& fan, const SupportFunction& phi);

}  // namespace torfol
