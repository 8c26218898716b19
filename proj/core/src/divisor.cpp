#include "torfol/divisor.hpp"

#include "torfol/error.hpp"

namespace torfol {
namespace {

void require_complete_simplicial(const Fan& fan) {
  if (!fan.is_complete() || !fan.is_simplicial())
    fail(ErrorCode::RequiresCompleteSimplicial, "the fan must be complete and simplicial");
}

void check_shape(const Fan& fan, const TorusDivisor& d) {
  if (d.coeffs.size() != fan.num_rays())
    fail(ErrorCode::InvalidDivisor, "divisor has " + std::to_string(d.coeffs.size()) + " coefficients for " +
                                        std::to_string(fan.num_rays()) + " rays");
}

}  // namespace

TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) { return {add(a.coeffs, b.coeffs)}; }
TorusDivisor operator-(const TorusDivisor& a) { return {negate(a.coeffs)}; }
TorusDivisor operator*(const Rational& s, const TorusDivisor& d) { return {scale(d.coeffs, s)}; }

SupportFunction support_function(const Fan& fan, const TorusDivisor& d) {
  check_shape(fan, d);
  SupportFunction phi;
  for (const auto& sigma : fan.maximal_cones()) {
    QVec rhs;
    for (auto i : sigma) rhs.push_back(-d.coeffs[i]);
    auto m = solve(QMatrix::from_rows(fan.cone_rays(sigma), fan.dim()), rhs);
    if (!m) fail(ErrorCode::NotRCartier, "divisor is not R-Cartier on cone " + to_string(sigma));
    phi.covectors.push_back(std::move(*m));
  }
  return phi;
}

Rational evaluate(const Fan& fan, const SupportFunction& phi, std::span<const Rational> v) {
  auto m = containing_maximal_cone(fan, v);
  if (!m) fail(ErrorCode::NotInSupport, to_string(v) + " is not in the support of the fan");
  return dot(phi.covectors[*m], v);
}

TorusDivisor canonical_divisor(const Fan& fan) { return {QVec(fan.num_rays(), Rational(-1))}; }

std::vector<CollectionInequality> collection_inequalities(const Fan& fan, const SupportFunction& phi) {
  require_complete_simplicial(fan);
  std::vector<CollectionInequality> out;
  for (const auto& p : primitive_collections(fan)) {
    CollectionInequality c{p, zero_vector(fan.dim()), 0, 0};
    for (auto i : p) {
      c.sum = add(c.sum, fan.ray(i));
      c.sum_of_values += evaluate(fan, phi, fan.ray(i));
    }
    c.value_of_sum = evaluate(fan, phi, c.sum);
    out.push_back(std::move(c));
  }
  return out;
}

bool is_strictly_convex(const Fan& fan, const SupportFunction& phi) {
  for (const auto& c : collection_inequalities(fan, phi))
    if (!c.strict()) return false;
  return true;
}

bool is_ample(const Fan& fan, const TorusDivisor& d) {
  require_complete_simplicial(fan);
  return is_strictly_convex(fan, support_function(fan, d));
}

bool is_nonpositive(const Fan& fan, const SupportFunction& phi) {
  require_complete_simplicial(fan);
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (evaluate(fan, phi, fan.ray(i)) > 0) return false;
  return true;
}

RaySet zero_cone(const Fan& fan, const SupportFunction& phi) {
  require_complete_simplicial(fan);
  if (!is_nonpositive(fan, phi)) fail(ErrorCode::PreconditionViolated, "support function is not non-positive");
  if (!is_strictly_convex(fan, phi))
    fail(ErrorCode::PreconditionViolated, "support function is not strictly convex");
  RaySet zeros;
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (evaluate(fan, phi, fan.ray(i)) == 0) zeros.push_back(i);
  if (!fan.has_cone(zeros))
    fail(ErrorCode::PreconditionViolated, "rays where the function vanishes do not span a cone of the fan");
  return zeros;
}

}  // namespace torfol
