#include "torfol/lctset.hpp"

#include "torfol/error.hpp"

namespace torfol {
namespace {

bool periodic_holds(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& t,
                    const Rational& delta, const Integer& m) {
  QVec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * Rational(m);
  const Rational lhs = t * psi(y, l) + (1 - t) * psi(y, s);
  const Rational rhs = (1 - t + iota(y, s, l) * t) * delta;
  return lhs >= rhs;
}

// Domain, divisibility and psi-bound conditions; fills report.t on success.
bool static_conditions(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta,
                       MembershipReport& rep) {
  bool in_domain = x.size() == s && l < s;
  for (const auto& xi : x)
    if (xi <= 0 || xi >= 1) in_domain = false;
  if (!in_domain) {
    rep.violated = MembershipCondition::Domain;
    return false;
  }
  for (std::size_t i = 0; i < s; ++i) {
    QVec rest;
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) rest.push_back(x[j]);
    const Integer own = index_of(std::span<const Rational>(&x[i], 1));
    if (index_of(rest) % own != 0) {
      rep.violated = MembershipCondition::IndexDivisibility;
      rep.index = i;
      return false;
    }
  }
  if (!(delta > psi(x, s))) {
    rep.violated = MembershipCondition::PsiBound;
    return false;
  }
  rep.t = t_value(x, s, l, delta);
  return true;
}

}  // namespace

Rational psi(std::span<const Rational> x, std::size_t l) {
  if (l > x.size()) fail(ErrorCode::IndexOutOfRange, "psi index exceeds the tuple length");
  Rational sum = 0;
  for (std::size_t i = 0; i < l; ++i) sum += frac(x[i]);
  return sum;
}

int iota(std::span<const Rational> y, std::size_t s, std::size_t l) { return psi(y, s) == psi(y, l) ? 1 : 0; }

Rational t_value(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta) {
  const Rational ps = psi(x, s);
  const Rational pl = psi(x, l);
  if (!(delta > ps)) fail(ErrorCode::DomainError, "t_value needs delta > psi_s(x)");
  const Rational den = delta - (ps - pl);
  if (den == 0) fail(ErrorCode::ZeroDenominator, "t_value denominator vanishes");
  return (delta - ps) / den;
}

std::string to_string(MembershipCondition c) {
  switch (c) {
    case MembershipCondition::None: return "none";
    case MembershipCondition::Domain: return "domain";
    case MembershipCondition::IndexDivisibility: return "index-divisibility";
    case MembershipCondition::PsiBound: return "psi-bound";
    case MembershipCondition::Periodic: return "periodic-inequality";
  }
  return "unknown";
}

MembershipReport is_member_V(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta) {
  MembershipReport rep;
  if (!static_conditions(x, s, l, delta, rep)) return rep;
  const Integer d = index_of(x);
  for (Integer m = 1; m < d; ++m)
    if (!periodic_holds(x, s, l, rep.t, delta, m)) {
      rep.violated = MembershipCondition::Periodic;
      rep.m = m;
      return rep;
    }
  rep.member = true;
  return rep;
}

MembershipReport is_member_V_scan(std::span<const Rational> x, std::size_t s, std::size_t l, const Rational& delta,
                                  const Integer& bound) {
  MembershipReport rep;
  if (!static_conditions(x, s, l, delta, rep)) return rep;
  const Integer d = index_of(x);
  for (Integer m = -bound; m <= bound; ++m) {
    if (m % d == 0) continue;
    if (!periodic_holds(x, s, l, rep.t, delta, m)) {
      rep.violated = MembershipCondition::Periodic;
      rep.m = m;
      return rep;
    }
  }
  rep.member = true;
  return rep;
}

DensityInstance density_family(const Rational& delta, std::size_t s, std::size_t k, std::size_t n, std::size_t r) {
  if (!(delta > 0) || delta > ratio(1, 2)) fail(ErrorCode::PreconditionViolated, "need 0 < delta <= 1/2");
  const Integer mz = floor(1 / delta);
  const std::size_t m = mz.get_ui();
  if (s < 2 || gcd(Integer(static_cast<unsigned long>(m)), Integer(static_cast<unsigned long>(s))) != 1)
    fail(ErrorCode::PreconditionViolated, "need s >= 2 coprime to m = floor(1/delta)");
  if (k == 0 || k >= s) fail(ErrorCode::PreconditionViolated, "need 0 < k < s");
  if (n < 2 || r == 0 || r >= n) fail(ErrorCode::PreconditionViolated, "need n >= 2 and 0 < r < n");

  const Rational sq(static_cast<long>(s));
  std::vector<QVec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  QVec g = zero_vector(n);
  g[0] = 1 - Rational(static_cast<long>(m)) / sq;
  g[1] = 1 / sq;
  gens.push_back(g);
  const auto lattice = AmbientLattice::generated_by(n, gens);

  const Rational km = Rational(static_cast<long>(k * m)) / sq;
  QVec wk = zero_vector(n);
  wk[0] = Rational(ceil(km)) - km;
  wk[1] = Rational(static_cast<long>(k)) / sq;
  if (!lattice.is_primitive(wk)) {
    fail(ErrorCode::PreconditionViolated, "w_k is not primitive in N for k = " + std::to_string(k) +
                                              ", so W cap N cannot equal Z w_k");
  }

  std::vector<QVec> rays;
  RaySet all;
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back(unit_vector(n, i));
    all.push_back(i);
  }
  DensityInstance out{delta,
                      s,
                      k,
                      n,
                      r,
                      m,
                      Fan(lattice, rays, {all}),
                      FoliationSpace(lattice, {wk}, r - 1),
                      wk,
                      wk[0] + wk[1],
                      0};
  out.expected_b = (out.q - delta) / out.q;
  return out;
}

bool density_k_valid(const Rational& delta, std::size_t s, std::size_t k) {
  if (!(delta > 0) || delta > ratio(1, 2) || s < 2 || k == 0 || k >= s) return false;
  const Integer m = floor(1 / delta);
  if (gcd(m, Integer(static_cast<unsigned long>(s))) != 1) return false;
  const Rational sq(static_cast<long>(s));
  const auto lattice = AmbientLattice::generated_by(2, {unit_vector(2, 0), unit_vector(2, 1),
                                                        QVec{1 - Rational(m) / sq, 1 / sq}});
  const Rational km = Rational(m * static_cast<long>(k)) / sq;
  const QVec wk{Rational(ceil(km)) - km, Rational(static_cast<long>(k)) / sq};
  return lattice.is_primitive(wk);
}

AffineModel affine_model(std::span<const Rational> x, std::size_t n, std::size_t l) {
  if (x.size() > n || l > n) fail(ErrorCode::InvalidArgument, "tuple longer than the dimension");
  std::vector<QVec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  QVec g = zero_vector(n);
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i];
  gens.push_back(g);
  const auto lattice = AmbientLattice::generated_by(n, gens);
  std::vector<QVec> rays, wgens;
  RaySet all;
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back(primitive(unit_vector(n, i), lattice));
    all.push_back(i);
    if (i < l) wgens.push_back(unit_vector(n, i));
  }
  return {Fan(lattice, rays, {all}), FoliationSpace(lattice, wgens, 0)};
}

LowerCertificate certify_lower_endpoint(const Fan& fan, const FoliationSpace& w, const ClosedFormLower& lower,
                                        const Rational& delta) {
  if (!(lower.value > 0) || !lower.maximizer)
    fail(ErrorCode::InvalidArgument, "only a positive lower endpoint with a maximizer can be certified");
  LowerCertificate out;
  out.value = lower.value;
  std::vector<std::size_t> inside, outside;
  QVec xin, xout;
  for (std::size_t i = 0; i < lower.cone.size(); ++i) {
    if (lower.coefficients[i] == 0) continue;
    const std::size_t ray = lower.cone[i];
    if (w.contains(fan.ray(ray))) {
      inside.push_back(ray);
      xin.push_back(lower.coefficients[i]);
    } else {
      outside.push_back(ray);
      xout.push_back(lower.coefficients[i]);
    }
  }
  out.permutation = inside;
  out.permutation.insert(out.permutation.end(), outside.begin(), outside.end());
  out.x = xin;
  out.x.insert(out.x.end(), xout.begin(), xout.end());
  out.s = out.x.size();
  out.l = xin.size();
  out.membership = is_member_V(out.x, out.s, out.l, delta);
  if (!out.certified() && out.value == 1) {
    // Every t-value with l = 0 equals 1; any admissible x in (0,1)^2 certifies it.
    const Integer k = floor(2 / delta) + 1;
    out.fallback = true;
    out.s = 2;
    out.l = 0;
    out.x = {Rational(1) / Rational(k), Rational(1) / Rational(k)};
    out.membership = is_member_V(out.x, 2, 0, delta);
  }
  return out;
}

}  // namespace torfol
