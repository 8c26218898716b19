#include "torfol/foliation.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "torfol/error.hpp"
#include "torfol/parallel.hpp"

namespace torfol {
namespace {

std::vector<RaySet> minimal_elements(const std::vector<RaySet>& cones) {
  std::vector<RaySet> out;
  for (const auto& c : cones) {
    bool minimal = true;
    for (const auto& d : cones)
      if (d != c && is_face(d, c)) minimal = false;
    if (minimal) out.push_back(c);
  }
  return out;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

template <typename Pred>
std::vector<RaySet> flag_cones(const Fan& fan, Pred pred) {
  const auto& all = fan.cones();
  std::vector<char> flags(all.size(), 0);
  parallel_for(all.size(), [&](std::size_t i) { flags[i] = pred(all[i]) ? 1 : 0; });
  std::vector<RaySet> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (flags[i]) out.push_back(all[i]);
  return out;
}

template <typename Pred>
LocusReport assemble(const Fan& fan, std::vector<RaySet> flagged, StratumKind kind, Pred pred,
                     const FoliationSpace& w) {
  LocusReport rep;
  rep.cones = std::move(flagged);
  rep.kind = kind;
  rep.model_dependent = !w.is_algebraic();
  rep.minimal_cones = minimal_elements(rep.cones);

  const std::size_t k = rep.cones.size();
  UnionFind uf(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool linked = kind == StratumKind::Orbit
                              ? (is_face(rep.cones[i], rep.cones[j]) || is_face(rep.cones[j], rep.cones[i]))
                              : closures_intersect(fan, rep.cones[i], rep.cones[j]);
      if (linked) uf.unite(i, j);
    }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = uf.find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      rep.components.push_back({rep.cones[i]});
    } else {
      rep.components[static_cast<std::size_t>(it - roots.begin())].push_back(rep.cones[i]);
    }
  }
  rep.is_connected = rep.components.size() <= 1;

  if (kind == StratumKind::Orbit) {
    for (const auto& tau : rep.cones)
      for (const auto& sigma : fan.cones())
        if (is_face(tau, sigma) && !std::binary_search(rep.cones.begin(), rep.cones.end(), sigma,
                                                      [](const RaySet& a, const RaySet& b) {
                                                        if (a.size() != b.size()) return a.size() < b.size();
                                                        return a < b;
                                                      }))
          rep.is_closed = false;
  }

  for (std::size_t i = 0; i < rep.minimal_cones.size(); ++i)
    for (std::size_t j = i + 1; j < rep.minimal_cones.size(); ++j) {
      ConeJoin cj{rep.minimal_cones[i], rep.minimal_cones[j], {}, false, false};
      std::set_union(cj.tau1.begin(), cj.tau1.end(), cj.tau2.begin(), cj.tau2.end(), std::back_inserter(cj.joined));
      cj.in_fan = fan.has_cone(cj.joined);
      cj.flagged = cj.in_fan && pred(cj.joined);
      rep.joins.push_back(std::move(cj));
    }
  return rep;
}

std::size_t generic_formula(std::size_t n, std::size_t l, std::size_t g, std::size_t k, std::size_t e) {
  const long extra = static_cast<long>(g) + static_cast<long>(k - e) - static_cast<long>(n - l);
  return e + static_cast<std::size_t>(std::max(0L, extra));
}

// dim((L + G) ∩ V) for a pseudo-random rational G of dimension g.
std::size_t sampled_dim(const std::vector<QVec>& lbasis, const std::vector<QVec>& vrays, std::size_t g,
                        std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-97, 97);
  std::vector<QVec> w = lbasis;
  for (std::size_t i = 0; i < g; ++i) {
    QVec v(n);
    for (auto& x : v) x = dist(rng);
    w.push_back(std::move(v));
  }
  std::vector<QVec> both = w;
  both.insert(both.end(), vrays.begin(), vrays.end());
  return rank(w, n) + rank(vrays, n) - rank(both, n);
}

}  // namespace

FoliationSpace::FoliationSpace(const AmbientLattice& lattice, const std::vector<QVec>& generators,
                               std::size_t generic_dim)
    : n_(lattice.dim()), generic_(generic_dim) {
  for (const auto& g : generators)
    if (g.size() != n_) fail(ErrorCode::InvalidFoliation, "foliation generator has the wrong length");
  basis_ = saturate(generators, lattice);
  if (basis_.size() + generic_ > n_) fail(ErrorCode::InvalidFoliation, "rank of W exceeds the dimension");
  if (generic_ > 0 && basis_.size() + generic_ >= n_)
    fail(ErrorCode::InvalidFoliation,
         "a generic part of dimension " + std::to_string(generic_) +
             " leaves no room: W would be all of N_C, whose rational part is N itself");
  equations_ = annihilator(basis_, n_);
}

FoliationSpace FoliationSpace::full(const AmbientLattice& lattice) {
  return FoliationSpace(lattice, lattice.basis_vectors(), 0);
}

FoliationSpace FoliationSpace::zero(const AmbientLattice& lattice) { return FoliationSpace(lattice, {}, 0); }

bool FoliationSpace::contains(std::span<const Rational> v) const {
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  return true;
}

bool ray_is_invariant(std::span<const Rational> ray, const FoliationSpace& w) { return !w.contains(ray); }

TorusDivisor foliation_canonical_divisor(const Fan& fan, const FoliationSpace& w) {
  TorusDivisor k = TorusDivisor::zero(fan);
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (w.contains(fan.ray(i))) k.coeffs[i] = -1;
  return k;
}

bool is_dicritical_pair(const Fan& fan, const RaySet& tau, const FoliationSpace& w) {
  if (!fan.has_cone(tau)) fail(ErrorCode::ConeNotInFan, "cone " + to_string(tau) + " is not in the fan");
  const auto rays = fan.cone_rays(tau);
  bool inside = true;
  for (const auto& r : rays)
    if (!w.contains(r)) inside = false;
  if (inside) return false;
  // Relint(tau) ∩ L_Q ≠ ∅: positive weights landing in span_Q(L).
  const std::size_t k = rays.size();
  std::vector<LinearConstraint> cs;
  for (const auto& e : w.equations()) {
    QVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = dot(e, rays[i]);
    cs.push_back({row, Relation::Equal, 0});
  }
  for (std::size_t i = 0; i < k; ++i) cs.push_back({unit_vector(k, i), Relation::Greater, 0});
  return feasible(k, cs);
}

std::size_t intersection_dim(const Fan& fan, const RaySet& tau, const FoliationSpace& w) {
  if (!fan.has_cone(tau)) fail(ErrorCode::ConeNotInFan, "cone " + to_string(tau) + " is not in the fan");
  const std::size_t n = fan.dim();
  const auto rays = fan.cone_rays(tau);
  const std::size_t k = rays.empty() ? 0 : rank(rays, n);
  const std::size_t l = w.rational_rank();
  std::vector<QVec> both = w.lattice_basis();
  both.insert(both.end(), rays.begin(), rays.end());
  const std::size_t e = l + k - (both.empty() ? 0 : rank(both, n));
  const std::size_t d = generic_formula(n, l, w.generic_dim(), k, e);
  if (w.generic_dim() > 0) {
    int agree = 0;
    for (std::uint32_t seed : {0x5eed1u, 0x5eed2u, 0x5eed3u})
      if (sampled_dim(w.lattice_basis(), rays, w.generic_dim(), n, seed) == d) ++agree;
    if (agree == 0)
      fail(ErrorCode::InternalConsistency,
           "generic-position dimension disagrees with sampled complements on cone " + to_string(tau));
  }
  return d;
}

bool is_singular_pair(const Fan& fan, const RaySet& tau, const FoliationSpace& w) {
  if (!fan.is_simplicial()) fail(ErrorCode::RequiresSimplicial, "singular pairs are defined here for simplicial fans");
  const std::size_t n = fan.dim();
  const auto rays = fan.cone_rays(tau);
  const std::size_t d = intersection_dim(fan, tau, w);
  std::vector<QVec> both = w.lattice_basis();
  both.insert(both.end(), rays.begin(), rays.end());
  const std::size_t e = w.rational_rank() + rays.size() - (both.empty() ? 0 : rank(both, n));
  if (d != e) return true;  // an irrational direction cannot be spanned by rays
  std::size_t inside = 0;
  for (const auto& r : rays)
    if (w.contains(r)) ++inside;
  return inside != e;
}

LocusReport dicritical_locus(const Fan& fan, const FoliationSpace& w) {
  auto pred = [&](const RaySet& t) { return is_dicritical_pair(fan, t, w); };
  const StratumKind kind = w.rank() + 1 >= fan.dim() ? StratumKind::Orbit : StratumKind::OrbitClosure;
  return assemble(fan, flag_cones(fan, pred), kind, pred, w);
}

LocusReport singular_locus(const Fan& fan, const FoliationSpace& w) {
  if (!fan.is_simplicial()) fail(ErrorCode::RequiresSimplicial, "the singular locus requires a simplicial fan");
  auto pred = [&](const RaySet& t) { return is_singular_pair(fan, t, w); };
  return assemble(fan, flag_cones(fan, pred), StratumKind::OrbitClosure, pred, w);
}

bool is_fano(const Fan& fan, const FoliationSpace& w) { return is_ample(fan, -foliation_canonical_divisor(fan, w)); }

ZeroDiscrepancyDivisor find_zero_ld_divisor(const Fan& fan, const FoliationSpace& w) {
  if (!fan.is_complete() || !fan.is_simplicial())
    fail(ErrorCode::RequiresCompleteSimplicial, "the fan must be complete and simplicial");
  if (w.is_everything()) fail(ErrorCode::PreconditionViolated, "W = N: the foliation is the tangent sheaf");
  if (!is_fano(fan, w)) fail(ErrorCode::PreconditionViolated, "the foliation is not Fano");
  const std::size_t n = fan.dim();
  RaySet support;
  std::vector<QVec> tangent;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    if (w.contains(fan.ray(i)))
      tangent.push_back(fan.ray(i));
    else
      support.push_back(i);
  }
  const auto eqs = annihilator(tangent, n);
  const std::size_t k = support.size();
  std::vector<LinearConstraint> cs;
  for (const auto& e : eqs) {
    QVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = dot(e, fan.ray(support[i]));
    cs.push_back({row, Relation::Equal, 0});
  }
  for (std::size_t i = 0; i < k; ++i) cs.push_back({unit_vector(k, i), Relation::GreaterEqual, 1});
  const auto sol = optimize(k, cs, QVec(k, Rational(1)), false);
  if (sol.status != LpStatus::Optimal)
    fail(ErrorCode::InternalConsistency, "no positive combination of invariant rays projects to zero");
  QVec v = zero_vector(n);
  for (std::size_t i = 0; i < k; ++i) v = add(v, scale(fan.ray(support[i]), sol.x[i]));
  ZeroDiscrepancyDivisor out{primitive(v, fan.lattice()), support, {}, fan, 0};
  const Rational factor = [&]() -> Rational {
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0) return out.v0[j] / v[j];
    return Rational(0);
  }();
  out.coefficients = scale(sol.x, factor);

  if (!w.contains(out.v0)) fail(ErrorCode::InternalConsistency, "constructed v0 is not in W");
  const auto phi = support_function(fan, -foliation_canonical_divisor(fan, w));
  if (evaluate(fan, phi, out.v0) != 0) fail(ErrorCode::InternalConsistency, "constructed v0 has nonzero value");
  if (find_ray(fan, out.v0)) fail(ErrorCode::InternalConsistency, "constructed v0 is already a ray");
  out.subdivided = star_subdivision(fan, out.v0);
  out.new_ray = *find_ray(out.subdivided, out.v0);
  return out;
}

}  // namespace torfol
