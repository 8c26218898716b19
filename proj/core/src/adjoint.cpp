#include "torfol/adjoint.hpp"

#include <algorithm>
#include <set>

#include "torfol/error.hpp"
#include "torfol/parallel.hpp"

namespace torfol {
namespace {

// Points of the sublattice spanned by `gens` satisfying the halfspaces (given over x).
std::vector<QVec> sublattice_points(const std::vector<QVec>& gens, const std::vector<HalfSpace>& hs) {
  const std::size_t k = gens.size();
  std::vector<HalfSpace> ys;
  for (const auto& h : hs) {
    QVec a(k);
    for (std::size_t j = 0; j < k; ++j) a[j] = dot(h.a, gens[j]);
    ys.push_back({std::move(a), h.b, h.strict});
  }
  std::vector<QVec> out;
  for (const auto& y : enumerate_integer_points(k, ys)) {
    QVec x = zero_vector(gens.empty() ? 0 : gens.front().size());
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0) x = add(x, scale(gens[j], Rational(y[j])));
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<HalfSpace> region_halfspaces(const Cone& cone, const QVec& m, const Rational& bound) {
  std::vector<HalfSpace> hs;
  for (const auto& g : cone.inequalities()) hs.push_back({negate(g), 0, false});
  hs.push_back({m, bound, true});
  return hs;
}

Rational threshold(const FoliationSpace& w, std::span<const Rational> x, const Rational& t, const Rational& d) {
  return w.contains(x) ? d : (1 - t) * d;
}

void keep_least(std::optional<Violation>& best, Violation v) {
  if (!best || lex_less(v.point, best->point)) best = std::move(v);
}

// A violating ray generator when one exists (lexicographically least among those),
// else the lexicographically least violation on the cone whose linear piece is m.
std::optional<Violation> cone_violation(const Fan& fan, const RaySet& sigma, const QVec& m, const FoliationSpace& w,
                                        const Rational& t, const Rational& d) {
  const auto rays = fan.cone_rays(sigma);
  std::optional<Violation> best;
  QVec c;
  for (const auto& r : rays) {
    c.push_back(dot(m, r));
    const Rational th = threshold(w, r, t, d);
    if (c.back() < th) keep_least(best, {r, c.back(), th, sigma});
  }
  if (best) return best;

  std::vector<QVec> zero_rays;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (c[i] == 0) zero_rays.push_back(rays[i]);
  const Cone cone = fan.cone(sigma);
  const auto& lattice = fan.lattice();
  auto consider = [&](QVec x) {
    if (is_zero(x) || !lattice.is_primitive(x)) return;
    const Rational val = dot(m, x);
    const Rational th = threshold(w, x, t, d);
    if (val < th) keep_least(best, {std::move(x), val, th, sigma});
  };

  if (zero_rays.empty()) {
    // Off W the threshold is (1 - t) d; points of W are scanned in L, where it is d.
    const Rational off = (1 - t) * d;
    if (off > 0) {
      if (cone.is_simplicial()) {
        for (auto& p : cone_points_below(lattice, rays, c, off))
          if (!w.contains(p.x)) consider(std::move(p.x));
      } else {
        for (auto& x : sublattice_points(lattice.basis_vectors(), region_halfspaces(cone, m, off)))
          if (!w.contains(x)) consider(std::move(x));
      }
    }
    if (!w.lattice_basis().empty())
      for (auto& x : sublattice_points(w.lattice_basis(), region_halfspaces(cone, m, d))) consider(std::move(x));
    return best;
  }

  // Thresholds vanish off W here; only points of L can fail. A nonzero point of
  // Cone(zero rays) ∩ L_Q has value 0 and fails outright.
  const std::size_t k = zero_rays.size();
  std::vector<LinearConstraint> cs;
  for (const auto& e : w.equations()) {
    QVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = dot(e, zero_rays[i]);
    cs.push_back({row, Relation::Equal, 0});
  }
  cs.push_back({QVec(k, Rational(1)), Relation::Equal, 1});
  for (std::size_t i = 0; i < k; ++i) cs.push_back({unit_vector(k, i), Relation::GreaterEqual, 0});
  if (auto mu = find_point(k, cs)) {
    QVec x = zero_vector(fan.dim());
    for (std::size_t i = 0; i < k; ++i) x = add(x, scale(zero_rays[i], (*mu)[i]));
    x = primitive(x, lattice);
    const Rational val = dot(m, x);
    return Violation{x, val, threshold(w, x, t, d), sigma};
  }
  if (w.lattice_basis().empty()) return best;
  for (auto& x : sublattice_points(w.lattice_basis(), region_halfspaces(cone, m, d))) consider(std::move(x));
  return best;
}

QVec ray_values(const Fan& fan, const RaySet& sigma, const FoliationSpace& w, const TorusDivisor& delta,
                const Rational& t) {
  QVec c;
  for (auto i : sigma) {
    const Rational iota = w.contains(fan.ray(i)) ? 1 : 0;
    c.push_back(t * iota + (1 - t) - delta.coeffs[i]);
  }
  return c;
}

QVec covector_for(const Fan& fan, const RaySet& sigma, const QVec& values) {
  auto m = solve(QMatrix::from_rows(fan.cone_rays(sigma), fan.dim()), values);
  if (!m) fail(ErrorCode::NotRCartier, "adjoint divisor is not R-Cartier on cone " + to_string(sigma));
  return *m;
}

void validate_delta(const Fan& fan, const TorusDivisor& delta) {
  if (delta.coeffs.size() != fan.num_rays()) fail(ErrorCode::InvalidDivisor, "boundary has the wrong number of coefficients");
  for (const auto& a : delta.coeffs)
    if (a < 0) fail(ErrorCode::InvalidDivisor, "boundary divisor must be effective");
}

void validate_positive(const Rational& d) {
  if (d <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
}

}  // namespace

void validate(const AdjointStructure& a) {
  validate_delta(a.fan, a.delta);
  if (a.t < 0 || a.t > 1) fail(ErrorCode::InvalidArgument, "t must lie in [0, 1]");
  if (a.w.ambient_dim() != a.fan.dim()) fail(ErrorCode::InvalidFoliation, "W and the fan live in different dimensions");
}

TorusDivisor adjoint_canonical_divisor(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta,
                                       const Rational& t) {
  return t * foliation_canonical_divisor(fan, w) + (1 - t) * canonical_divisor(fan) + delta;
}

Rational adjoint_log_discrepancy(const AdjointStructure& a, std::span<const Rational> v) {
  validate(a);
  if (!a.fan.lattice().is_primitive(v)) fail(ErrorCode::NotPrimitive, to_string(v) + " is not primitive in N");
  const auto phi = support_function(a.fan, adjoint_canonical_divisor(a.fan, a.w, a.delta, a.t));
  return evaluate(a.fan, phi, v);
}

DeltaLcResult is_delta_lc(const AdjointStructure& a, const Rational& delta) {
  validate(a);
  validate_positive(delta);
  const auto phi = support_function(a.fan, adjoint_canonical_divisor(a.fan, a.w, a.delta, a.t));
  const auto& cones = a.fan.maximal_cones();
  std::vector<std::optional<Violation>> found(cones.size());
  parallel_for(cones.size(), [&](std::size_t i) {
    found[i] = cone_violation(a.fan, cones[i], phi.covectors[i], a.w, a.t, delta);
  });
  DeltaLcResult out;
  for (auto& f : found)
    if (f) keep_least(out.witness, std::move(*f));
  out.holds = !out.witness.has_value();
  return out;
}

TInterval intersect(const TInterval& a, const TInterval& b) {
  if (a.empty || b.empty) return TInterval::none();
  TInterval out{false, std::max(a.lo, b.lo), std::min(a.hi, b.hi), true, true};
  if (out.lo > out.hi) return TInterval::none();
  return out;
}

TInterval affine_interval(const Rational& g0, const Rational& g1) {
  const Rational slope = g1 - g0;
  if (slope == 0) return g0 >= 0 ? TInterval::unit() : TInterval::none();
  const Rational root = -g0 / slope;
  TInterval out = TInterval::unit();
  if (slope > 0)
    out.lo = std::max(Rational(0), root);
  else
    out.hi = std::min(Rational(1), root);
  if (out.lo > out.hi) return TInterval::none();
  return out;
}

std::vector<ConePoint> cone_points_below(const AmbientLattice& lattice, const std::vector<QVec>& rays,
                                         const QVec& c, const Rational& bound, bool primitive_only) {
  const std::size_t d = rays.size();
  if (d == 0) return {};
  const std::size_t n = lattice.dim();
  for (const auto& ci : c)
    if (ci <= 0) fail(ErrorCode::UnboundedRegion, "region along a ray with non-positive value is unbounded");
  const QMatrix v = QMatrix::from_columns(rays, n);
  const QMatrix vt = v.transposed();
  const auto gram_inv = inverse(vt * v);
  if (!gram_inv) fail(ErrorCode::InvalidCone, "cone_points_below needs linearly independent rays");
  const QMatrix left = *gram_inv * vt;

  // Representatives of (N ∩ span) / (Z v_1 + ... + Z v_d) in ray coordinates, in [0, 1)^d.
  std::vector<QVec> gens;
  for (const auto& b : saturate(rays, lattice)) {
    QVec f = left.apply(b);
    for (auto& e : f) e = frac(e);
    gens.push_back(std::move(f));
  }
  auto lex = [](const QVec& a, const QVec& b) { return lex_less(a, b); };
  std::set<QVec, decltype(lex)> reps(lex);
  std::vector<QVec> frontier{QVec(d, Rational(0))};
  reps.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<QVec> next;
    for (const auto& r : frontier)
      for (const auto& g : gens) {
        QVec s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = frac(r[i] + g[i]);
        if (reps.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }

  std::vector<ConePoint> out;
  QVec lambda(d);
  for (const auto& f : reps) {
    QVec tail(d + 1, Rational(0));  // tail[i] = sum_{j >= i} f_j c_j
    for (std::size_t i = d; i > 0; --i) tail[i - 1] = tail[i] + f[i - 1] * c[i - 1];
    if (!(tail[0] < bound)) continue;
    // Depth-first over the integer parts k_i >= 0.
    auto rec = [&](auto&& self, std::size_t i, const Rational& used) -> void {
      if (i == d) {
        if (is_zero(lambda)) return;
        QVec x = v.apply(lambda);
        if (primitive_only && !lattice.is_primitive(x)) return;
        out.push_back({std::move(x), lambda});
        return;
      }
      for (Integer k = 0;; ++k) {
        lambda[i] = Rational(k) + f[i];
        const Rational here = used + lambda[i] * c[i];
        if (!(here + tail[i + 1] < bound)) break;
        self(self, i + 1, here);
      }
    };
    rec(rec, 0, Rational(0));
  }
  std::sort(out.begin(), out.end(), [](const ConePoint& a, const ConePoint& b) { return lex_less(a.x, b.x); });
  return out;
}

TInterval lct_interval_cone(const Fan& fan, std::size_t max_cone, const FoliationSpace& w, const TorusDivisor& delta,
                            const Rational& d) {
  const RaySet& sigma = fan.maximal_cones().at(max_cone);
  if (fan.cone_dim(sigma) != sigma.size()) fail(ErrorCode::RequiresSimplicial, "lct_interval needs simplicial cones");
  const auto rays = fan.cone_rays(sigma);
  std::vector<bool> iota;
  bool all_in_w = true;
  for (const auto& r : rays) {
    iota.push_back(w.contains(r));
    if (!iota.back()) all_in_w = false;
  }

  // Each primitive v imposes g_v(t) >= 0 with g_v affine in t; ray generators first.
  TInterval result = TInterval::unit();
  auto constrain = [&](const QVec& lambda, std::span<const Rational> x) {
    Rational phi0 = 0, phi1 = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Rational di = delta.coeffs[sigma[i]];
      phi0 += lambda[i] * (1 - di);
      phi1 += lambda[i] * ((iota[i] ? 1 : 0) - di);
    }
    const Rational ix = w.contains(x) ? 1 : 0;
    result = intersect(result, affine_interval(phi0 - d, phi1 - ix * d));
  };
  for (std::size_t i = 0; i < rays.size(); ++i) constrain(unit_vector(rays.size(), i), rays[i]);
  if (result.empty) return result;

  // On [a, b] with every ray value positive at a and b, a violated constraint is
  // violated at a or at b, hence by a point of the bounded region {phi_a < d} or {phi_b < d}.
  auto region = [&](const Rational& t) {
    for (const auto& p : cone_points_below(fan.lattice(), rays, ray_values(fan, sigma, w, delta, t), d))
      constrain(p.lambda, p.x);
  };

  if (result.hi == 1 && !all_in_w) {
    const QVec m = covector_for(fan, sigma, ray_values(fan, sigma, w, delta, 1));
    auto v = cone_violation(fan, sigma, m, w, 1, d);
    if (!v) {
      // g_v(1) >= 0 for all v, so anything violated on [a, 1) is violated at a.
      if (result.lo < 1) region(result.lo);
      return result;
    }
    // The witness fails at t = 1 and caps the interval strictly below 1.
    const auto lambda = *cone_coefficients(rays, v->point);
    constrain(lambda, v->point);
    if (result.empty) return result;
  }
  const Rational a = result.lo, b = result.hi;
  region(a);
  if (!result.empty && b != a) region(b);
  return result;
}

TInterval lct_interval(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta, const Rational& d) {
  if (!fan.is_simplicial()) fail(ErrorCode::RequiresSimplicial, "lct_interval requires a simplicial fan");
  validate_delta(fan, delta);
  validate_positive(d);
  const auto& cones = fan.maximal_cones();
  std::vector<TInterval> parts(cones.size());
  parallel_for(cones.size(), [&](std::size_t i) { parts[i] = lct_interval_cone(fan, i, w, delta, d); });
  TInterval out = TInterval::unit();
  for (const auto& p : parts) out = intersect(out, p);
  return out;
}

ClosedFormLower closed_form_lower_lct_cone(const Fan& fan, std::size_t max_cone, const FoliationSpace& w,
                                           const Rational& d) {
  const RaySet& sigma = fan.maximal_cones().at(max_cone);
  if (fan.cone_dim(sigma) != sigma.size()) fail(ErrorCode::RequiresSimplicial, "closed form needs simplicial cones");
  const auto rays = fan.cone_rays(sigma);
  ClosedFormLower out;
  out.cone = sigma;
  for (const auto& p : cone_points_below(fan.lattice(), rays, QVec(rays.size(), Rational(1)), d)) {
    if (w.contains(p.x)) continue;
    Rational kx = 0, outside = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      kx += p.lambda[i];
      if (!w.contains(rays[i])) outside += p.lambda[i];
    }
    const Rational value = (d - kx) / (d - outside);
    if (value > out.value) {
      out.value = value;
      out.maximizer = p.x;
      out.coefficients = p.lambda;
    }
  }
  return out;
}

ClosedFormLower closed_form_lower_lct(const Fan& fan, const FoliationSpace& w, const Rational& d) {
  validate_positive(d);
  ClosedFormLower best;
  for (std::size_t i = 0; i < fan.maximal_cones().size(); ++i) {
    auto c = closed_form_lower_lct_cone(fan, i, w, d);
    if (c.value > best.value) best = std::move(c);
  }
  return best;
}

TangentCheck check_t1_forces_tangent(const Fan& fan, const FoliationSpace& w, const Rational& d) {
  if (!fan.is_complete() || !fan.is_simplicial())
    fail(ErrorCode::RequiresCompleteSimplicial, "the fan must be complete and simplicial");
  TangentCheck out;
  auto r = is_delta_lc({fan, w, TorusDivisor::zero(fan), 1}, d);
  out.lc_at_one = r.holds;
  out.witness = r.witness;
  out.tangent = w.is_everything();
  out.implication_holds = !out.lc_at_one || out.tangent;
  return out;
}

BoundednessCertificate boundedness_certificate(const Fan& fan, const FoliationSpace& w, const TorusDivisor& delta,
                                               const Rational& t1, const Rational& t2, const Rational& d) {
  validate_delta(fan, delta);
  validate_positive(d);
  if (t1 < 0 || t1 >= 1 || t2 < 0 || t2 >= 1) fail(ErrorCode::InvalidArgument, "t1 and t2 must lie in [0, 1)");
  if (!fan.is_complete() || !fan.is_simplicial())
    fail(ErrorCode::HypothesisFailed, "ampleness of -K_t1 cannot hold: the fan is not complete and simplicial");
  if (!is_ample(fan, -adjoint_canonical_divisor(fan, w, delta, t1)))
    fail(ErrorCode::HypothesisFailed, "ampleness fails: -K_t1 is not ample");
  const auto lc = is_delta_lc({fan, w, delta, t2}, d);
  if (!lc.holds)
    fail(ErrorCode::HypothesisFailed, "delta-lc fails at t2: witness " + to_string(lc.witness->point));

  BoundednessCertificate out;
  out.vertices = fan.rays();
  out.p = convex_hull(out.vertices, fan.dim());
  out.lambda = std::min(Rational((1 - t1) + (1 - t2) * d), Rational((1 - t2) * (1 + d)));
  out.scale = out.lambda * (1 - t1) * (1 - t2) * d;
  Polytope scaled{fan.dim(), {}};
  for (const auto& h : out.p.halfspaces) scaled.halfspaces.push_back({h.a, h.b * out.scale, h.strict});
  out.points = enumerate_lattice_points(scaled, fan.lattice());
  for (const auto& x : out.points)
    if (!is_zero(x)) {
      out.witness = x;
      break;
    }
  out.delta_prime = adjoint_canonical_divisor(fan, w, delta, t2) + -canonical_divisor(fan);
  out.delta_prime_lc =
      is_delta_lc({fan, FoliationSpace::full(fan.lattice()), out.delta_prime, 0}, (1 - t2) * d).holds;
  return out;
}

}  // namespace torfol
