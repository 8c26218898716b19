#include "torfol/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "torfol/error.hpp"

namespace torfol {
namespace {

bool size_then_lex(const RaySet& a, const RaySet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool linearly_independent(const std::vector<QVec>& rays) {
  if (rays.empty()) return true;
  return rank(rays, rays.front().size()) == rays.size();
}

RaySet set_union(const RaySet& a, const RaySet& b) {
  RaySet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RaySet set_intersection(const RaySet& a, const RaySet& b) {
  RaySet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<RaySet> all_subsets(std::size_t k) {
  std::vector<RaySet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    RaySet s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

// Does some m vanish on common rays, stay >= 1 on the rest of a and <= -1 on the rest of b?
bool separated(const std::vector<QVec>& rays, const RaySet& a, const RaySet& b, std::size_t n) {
  const RaySet common = set_intersection(a, b);
  std::vector<LinearConstraint> cs;
  for (auto i : common) cs.push_back({rays[i], Relation::Equal, 0});
  for (auto i : a)
    if (!std::binary_search(common.begin(), common.end(), i)) cs.push_back({rays[i], Relation::GreaterEqual, 1});
  for (auto i : b)
    if (!std::binary_search(common.begin(), common.end(), i)) cs.push_back({rays[i], Relation::LessEqual, -1});
  return feasible(n, cs);
}

}  // namespace

std::string to_string(const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

std::optional<QVec> cone_coefficients(const std::vector<QVec>& rays, std::span<const Rational> v) {
  if (rays.empty()) {
    if (is_zero(v)) return QVec{};
    return std::nullopt;
  }
  const std::size_t n = v.size();
  const std::size_t k = rays.size();
  if (linearly_independent(rays)) {
    auto lambda = solve(QMatrix::from_columns(rays, n), v);
    if (!lambda) return std::nullopt;
    for (const auto& l : *lambda)
      if (l < 0) return std::nullopt;
    return lambda;
  }
  std::vector<LinearConstraint> cs;
  for (std::size_t j = 0; j < n; ++j) {
    QVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = rays[i][j];
    cs.push_back({row, Relation::Equal, v[j]});
  }
  for (std::size_t i = 0; i < k; ++i) cs.push_back({unit_vector(k, i), Relation::GreaterEqual, 0});
  return find_point(k, cs);
}

bool cone_contains(const std::vector<QVec>& rays, std::span<const Rational> v) {
  return cone_coefficients(rays, v).has_value();
}

bool cone_relint_contains(const std::vector<QVec>& rays, std::span<const Rational> v) {
  if (rays.empty()) return is_zero(v);
  const std::size_t n = v.size();
  const std::size_t k = rays.size();
  if (linearly_independent(rays)) {
    auto lambda = solve(QMatrix::from_columns(rays, n), v);
    if (!lambda) return false;
    for (const auto& l : *lambda)
      if (l <= 0) return false;
    return true;
  }
  std::vector<LinearConstraint> cs;
  for (std::size_t j = 0; j < n; ++j) {
    QVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = rays[i][j];
    cs.push_back({row, Relation::Equal, v[j]});
  }
  for (std::size_t i = 0; i < k; ++i) cs.push_back({unit_vector(k, i), Relation::Greater, 0});
  return feasible(k, cs);
}

bool is_strongly_convex(const std::vector<QVec>& rays, std::size_t dim) {
  std::vector<LinearConstraint> cs;
  for (const auto& r : rays) cs.push_back({r, Relation::GreaterEqual, 1});
  return feasible(dim, cs);
}

Cone::Cone(const AmbientLattice& lattice, std::vector<QVec> rays) : lattice_(lattice), rays_(std::move(rays)) {
  const std::size_t n = lattice_.dim();
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (r.size() != n) fail(ErrorCode::InvalidCone, "ray " + std::to_string(i) + " has the wrong length");
    if (is_zero(r)) fail(ErrorCode::InvalidCone, "ray " + std::to_string(i) + " is zero");
    if (!lattice_.is_primitive(r))
      fail(ErrorCode::InvalidCone, "ray " + std::to_string(i) + " = " + to_string(r) + " is not a primitive lattice point");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[j] == r) fail(ErrorCode::InvalidCone, "ray " + to_string(r) + " is repeated");
  }
  if (!is_strongly_convex(rays_, n)) fail(ErrorCode::InvalidCone, "cone contains a line");
  dim_ = rays_.empty() ? 0 : rank(rays_, n);
  if (dim_ != rays_.size()) {
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      std::vector<QVec> others;
      for (std::size_t j = 0; j < rays_.size(); ++j)
        if (j != i) others.push_back(rays_[j]);
      if (cone_contains(others, rays_[i]))
        fail(ErrorCode::InvalidCone, "ray " + to_string(rays_[i]) + " is not extremal");
    }
  }
}

bool Cone::contains(std::span<const Rational> v) const { return cone_contains(rays_, v); }
bool Cone::relint_contains(std::span<const Rational> v) const { return cone_relint_contains(rays_, v); }

std::vector<RaySet> Cone::face_sets() const {
  const std::size_t k = rays_.size();
  if (is_simplicial()) return all_subsets(k);
  const std::size_t n = lattice_.dim();
  // Facets come from hyperplanes through dim-1 independent rays with all rays on one side.
  std::set<RaySet> facets;
  std::vector<std::size_t> idx(dim_ - 1);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (;;) {
    std::vector<QVec> sub;
    for (auto i : idx) sub.push_back(rays_[i]);
    if (idx.empty() || rank(sub, n) == idx.size()) {
      for (const auto& m : annihilator(sub, n)) {
        bool pos = false, neg = false;
        RaySet zero;
        for (std::size_t i = 0; i < k; ++i) {
          const Rational s = dot(m, rays_[i]);
          if (s > 0) pos = true;
          if (s < 0) neg = true;
          if (s == 0) zero.push_back(i);
        }
        if (!pos && !neg) continue;
        if (!(pos && neg)) facets.insert(zero);
        break;
      }
    }
    std::size_t i = idx.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] < k - idx.size() + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  RaySet full(k);
  for (std::size_t i = 0; i < k; ++i) full[i] = i;
  std::set<RaySet> all{full};
  std::vector<RaySet> frontier{full};
  while (!frontier.empty()) {
    std::vector<RaySet> next;
    for (const auto& f : frontier)
      for (const auto& g : facets) {
        RaySet h = set_intersection(f, g);
        if (all.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  std::vector<RaySet> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

std::vector<QVec> Cone::inequalities() const {
  const std::size_t n = lattice_.dim();
  std::vector<QVec> out;
  for (const auto& e : annihilator(rays_, n)) {
    out.push_back(e);
    out.push_back(negate(e));
  }
  if (dim_ == 0) return out;
  for (const auto& f : face_sets()) {
    std::vector<QVec> sub;
    for (auto i : f) sub.push_back(rays_[i]);
    if ((sub.empty() ? 0 : rank(sub, n)) + 1 != dim_) continue;
    for (const auto& m : annihilator(sub, n)) {
      std::optional<Rational> sign;
      for (const auto& r : rays_) {
        const Rational s = dot(m, r);
        if (s != 0) {
          sign = s;
          break;
        }
      }
      if (!sign) continue;
      out.push_back(*sign > 0 ? m : negate(m));
      break;
    }
  }
  return out;
}

std::vector<Cone> faces(const Cone& sigma) {
  std::vector<Cone> out;
  for (const auto& s : sigma.face_sets()) {
    std::vector<QVec> r;
    for (auto i : s) r.push_back(sigma.rays()[i]);
    out.emplace_back(sigma.lattice(), std::move(r));
  }
  return out;
}

Fan::Fan(AmbientLattice lattice, std::vector<QVec> rays, std::vector<RaySet> max_cones)
    : lattice_(std::move(lattice)), rays_(std::move(rays)) {
  const std::size_t n = lattice_.dim();
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (r.size() != n) fail(ErrorCode::InvalidFan, "ray " + std::to_string(i) + " has the wrong length");
    if (is_zero(r)) fail(ErrorCode::InvalidFan, "ray " + std::to_string(i) + " is zero");
    if (!lattice_.is_primitive(r))
      fail(ErrorCode::NotPrimitive, "ray " + std::to_string(i) + " = " + to_string(r) + " is not primitive in N");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[j] == r)
        fail(ErrorCode::InvalidFan, "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  for (auto& c : max_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      fail(ErrorCode::InvalidFan, "cone " + to_string(c) + " repeats a ray index");
    for (auto i : c)
      if (i >= rays_.size()) fail(ErrorCode::InvalidFan, "cone " + to_string(c) + " uses an unknown ray index");
  }
  std::sort(max_cones.begin(), max_cones.end());
  max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());

  std::vector<Cone> geometry;
  for (const auto& c : max_cones) {
    try {
      geometry.push_back(cone(c));
    } catch (const Error& e) {
      fail(ErrorCode::InvalidFan, "cone " + to_string(c) + ": " + e.what());
    }
  }
  // Intersection axiom: every pair meets in a common face.
  for (std::size_t i = 0; i < max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < max_cones.size(); ++j)
      if (!separated(rays_, max_cones[i], max_cones[j], n))
        fail(ErrorCode::InvalidFan, "intersection axiom fails: cones " + to_string(max_cones[i]) + " and " +
                                        to_string(max_cones[j]) + " do not meet in a common face");

  std::set<RaySet> table;
  for (std::size_t i = 0; i < max_cones.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < max_cones.size() && maximal; ++j)
      if (i != j && is_face(max_cones[i], max_cones[j])) maximal = false;
    if (maximal) max_cones_.push_back(max_cones[i]);
    for (const auto& f : geometry[i].face_sets()) {
      RaySet g;
      for (auto k : f) g.push_back(max_cones[i][k]);
      table.insert(std::move(g));
    }
    if (!geometry[i].is_simplicial()) simplicial_ = false;
  }
  table.insert(RaySet{});
  for (std::size_t r = 0; r < rays_.size(); ++r)
    if (!table.count(RaySet{r})) fail(ErrorCode::InvalidFan, "ray " + std::to_string(r) + " lies in no cone");
  cones_.assign(table.begin(), table.end());
  std::sort(cones_.begin(), cones_.end(), size_then_lex);
  for (const auto& c : cones_) cone_dims_.push_back(c.empty() ? 0 : rank(cone_rays(c), n));

  // Completeness: facets of n-cones pair up and the n-cones form one adjacency class.
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < max_cones_.size(); ++i)
    if (cone_dim(max_cones_[i]) == n) top.push_back(i);
  bool complete = !top.empty();
  std::map<RaySet, std::vector<std::size_t>> facet_owners;
  for (std::size_t c = 0; c < cones_.size() && complete; ++c) {
    if (cone_dims_[c] != n - 1) continue;
    auto& owners = facet_owners[cones_[c]];
    for (auto t : top)
      if (is_face(cones_[c], max_cones_[t])) owners.push_back(t);
    if (owners.size() != 2) complete = false;
  }
  if (complete) {
    std::vector<std::size_t> parent(max_cones_.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [f, owners] : facet_owners) parent[find(owners[0])] = find(owners[1]);
    for (auto t : top)
      if (find(t) != find(top.front())) complete = false;
  }
  complete_ = complete;
}

bool Fan::has_cone(const RaySet& s) const {
  return std::binary_search(cones_.begin(), cones_.end(), s, size_then_lex);
}

std::size_t Fan::cone_dim(const RaySet& s) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), s, size_then_lex);
  if (it == cones_.end() || *it != s) fail(ErrorCode::ConeNotInFan, "cone " + to_string(s) + " is not in the fan");
  return cone_dims_[static_cast<std::size_t>(it - cones_.begin())];
}

std::vector<QVec> Fan::cone_rays(const RaySet& s) const {
  std::vector<QVec> out;
  for (auto i : s) out.push_back(rays_.at(i));
  return out;
}

Cone Fan::cone(const RaySet& s) const { return Cone(lattice_, cone_rays(s)); }

bool is_complete(const Fan& fan) { return fan.is_complete(); }
bool is_simplicial(const Fan& fan) { return fan.is_simplicial(); }

bool is_face(const RaySet& tau, const RaySet& sigma) {
  return std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end());
}

std::optional<std::size_t> find_ray(const Fan& fan, std::span<const Rational> v) {
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (std::equal(v.begin(), v.end(), fan.ray(i).begin(), fan.ray(i).end())) return i;
  return std::nullopt;
}

std::optional<std::size_t> containing_maximal_cone(const Fan& fan, std::span<const Rational> v) {
  for (std::size_t i = 0; i < fan.maximal_cones().size(); ++i)
    if (cone_contains(fan.cone_rays(fan.maximal_cones()[i]), v)) return i;
  return std::nullopt;
}

bool in_support(const Fan& fan, std::span<const Rational> v) { return containing_maximal_cone(fan, v).has_value(); }

RaySet locate(const Fan& fan, std::span<const Rational> v) {
  if (v.size() != fan.dim()) fail(ErrorCode::InvalidArgument, "vector length does not match the fan");
  auto m = containing_maximal_cone(fan, v);
  if (!m) fail(ErrorCode::NotInSupport, to_string(v) + " is not in the support of the fan");
  const RaySet& sigma = fan.maximal_cones()[*m];
  if (fan.cone_dim(sigma) == sigma.size()) {
    const QVec lambda = *cone_coefficients(fan.cone_rays(sigma), v);
    RaySet out;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (lambda[i] > 0) out.push_back(sigma[i]);
    return out;
  }
  for (const auto& c : fan.cones())
    if (is_face(c, sigma) && cone_relint_contains(fan.cone_rays(c), v)) return c;
  fail(ErrorCode::InternalConsistency, "no face of the containing cone has the point in its relative interior");
}

bool closures_intersect(const Fan& fan, const RaySet& tau1, const RaySet& tau2) {
  if (!fan.has_cone(tau1)) fail(ErrorCode::ConeNotInFan, "cone " + to_string(tau1) + " is not in the fan");
  if (!fan.has_cone(tau2)) fail(ErrorCode::ConeNotInFan, "cone " + to_string(tau2) + " is not in the fan");
  const RaySet joined = set_union(tau1, tau2);
  for (const auto& sigma : fan.maximal_cones())
    if (is_face(joined, sigma)) return true;
  return false;
}

Fan star_subdivision(const Fan& fan, std::span<const Rational> v) {
  if (v.size() != fan.dim()) fail(ErrorCode::InvalidArgument, "vector length does not match the fan");
  if (!fan.lattice().is_primitive(v)) fail(ErrorCode::NotPrimitive, to_string(v) + " is not a primitive lattice point");
  if (find_ray(fan, v)) return fan;
  const RaySet tau = locate(fan, v);
  const std::size_t fresh = fan.num_rays();
  std::vector<RaySet> cones;
  for (const auto& sigma : fan.maximal_cones()) {
    if (!is_face(tau, sigma)) {
      cones.push_back(sigma);
      continue;
    }
    const std::size_t d = fan.cone_dim(sigma);
    for (const auto& f : fan.cones()) {
      if (f.size() >= sigma.size() || !is_face(f, sigma) || fan.cone_dim(f) + 1 != d || is_face(tau, f)) continue;
      RaySet joined = f;
      joined.push_back(fresh);
      cones.push_back(std::move(joined));
    }
  }
  std::vector<QVec> rays = fan.rays();
  rays.emplace_back(v.begin(), v.end());
  return Fan(fan.lattice(), std::move(rays), std::move(cones));
}

std::vector<RaySet> primitive_collections(const Fan& fan) {
  std::set<RaySet> closure;
  for (const auto& sigma : fan.maximal_cones())
    for (const auto& s : all_subsets(sigma.size())) {
      RaySet g;
      for (auto i : s) g.push_back(sigma[i]);
      closure.insert(std::move(g));
    }
  std::set<RaySet> found;
  for (const auto& s : closure)
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
      if (std::binary_search(s.begin(), s.end(), r)) continue;
      RaySet p = s;
      p.insert(std::lower_bound(p.begin(), p.end(), r), r);
      if (closure.count(p) || found.count(p)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < p.size() && ok; ++i) {
        RaySet q = p;
        q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
        ok = closure.count(q) > 0;
      }
      if (ok) found.insert(std::move(p));
    }
  std::vector<RaySet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

}  // namespace torfol
