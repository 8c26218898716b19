#include "torfol/lattice.hpp"

#include <algorithm>
#include <set>

#include "torfol/error.hpp"

namespace torfol {
namespace {

void row_axpy(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void row_negate(ZMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

ZVec integral_direction(std::span<const Rational> v) {
  const Integer d = common_denominator(v);
  ZVec z(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * d;
    z[i] = s.get_num();
    g = gcd(g, z[i]);
  }
  if (g > 1)
    for (auto& e : z) e /= g;
  return z;
}

}  // namespace

HermiteForm hermite_normal_form(const ZMatrix& m) {
  HermiteForm out{m, ZMatrix::identity(m.rows())};
  ZMatrix& h = out.h;
  ZMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (!best || abs(h(i, c)) < abs(h(*best, c))) best = i;
      }
      if (!best) break;
      h.swap_rows(*best, r);
      u.swap_rows(*best, r);
      bool cleared = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        const Integer q = floor_div(h(i, c), h(r, c));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      row_negate(h, r);
      row_negate(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(h(i, c), h(r, c));
      if (q == 0) continue;
      row_axpy(h, i, r, q);
      row_axpy(u, i, r, q);
    }
    ++r;
  }
  return out;
}

std::vector<ZVec> integer_kernel(const ZMatrix& a) {
  const auto f = hermite_normal_form(a.transposed());
  std::vector<ZVec> out;
  for (std::size_t i = 0; i < f.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < f.h.cols() && zero; ++j) zero = f.h(i, j) == 0;
    if (zero) out.push_back(f.u.row_vector(i));
  }
  return out;
}

AmbientLattice::AmbientLattice(QMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    fail(ErrorCode::InvalidLattice, "lattice basis must be a nonempty square matrix");
  auto inv = inverse(basis_);
  if (!inv) fail(ErrorCode::InvalidLattice, "lattice basis is singular");
  inverse_ = std::move(*inv);
}

AmbientLattice AmbientLattice::standard(std::size_t n) { return AmbientLattice(QMatrix::identity(n)); }

AmbientLattice AmbientLattice::generated_by(std::size_t n, const std::vector<QVec>& generators) {
  if (generators.empty()) fail(ErrorCode::InvalidLattice, "no lattice generators");
  Integer d = 1;
  for (const auto& g : generators) {
    if (g.size() != n) fail(ErrorCode::InvalidLattice, "generator has the wrong length");
    d = lcm(d, common_denominator(g));
  }
  ZMatrix m(generators.size(), n);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(generators[i][j] * d).get_num();
  const auto h = hermite_normal_form(m).h;
  QMatrix basis(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < n && zero; ++j) zero = h(i, j) == 0;
    if (zero) continue;
    if (col == n) fail(ErrorCode::InternalConsistency, "HNF rank exceeds dimension");
    for (std::size_t j = 0; j < n; ++j) basis(j, col) = Rational(h(i, j)) / d;
    ++col;
  }
  if (col != n) fail(ErrorCode::InvalidLattice, "generators do not span a full-rank lattice");
  return AmbientLattice(std::move(basis));
}

std::vector<QVec> AmbientLattice::basis_vectors() const {
  std::vector<QVec> out;
  for (std::size_t j = 0; j < dim(); ++j) out.push_back(basis_.column_vector(j));
  return out;
}

QVec AmbientLattice::to_coords(std::span<const Rational> v) const {
  if (v.size() != dim()) fail(ErrorCode::InvalidArgument, "vector length does not match the lattice");
  return inverse_.apply(v);
}

QVec AmbientLattice::from_coords(std::span<const Rational> z) const {
  if (z.size() != dim()) fail(ErrorCode::InvalidArgument, "coordinate length does not match the lattice");
  return basis_.apply(z);
}

bool AmbientLattice::contains(std::span<const Rational> v) const { return is_integral(to_coords(v)); }

bool AmbientLattice::is_primitive(std::span<const Rational> v) const {
  const QVec z = to_coords(v);
  if (!is_integral(z) || is_zero(z)) return false;
  Integer g = 0;
  for (const auto& e : z) g = gcd(g, e.get_num());
  return g == 1;
}

QVec primitive(std::span<const Rational> v, const AmbientLattice& n) {
  if (is_zero(v)) fail(ErrorCode::ZeroVector, "cannot take the primitive vector of 0");
  const ZVec z = integral_direction(n.to_coords(v));
  return n.from_coords(to_qvec(z));
}

std::vector<QVec> saturate(const std::vector<QVec>& generators, const AmbientLattice& n) {
  const std::size_t d = n.dim();
  ZMatrix g(generators.size(), d);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const QVec z = n.to_coords(generators[i]);
    if (is_zero(z)) continue;
    const ZVec iz = integral_direction(z);
    for (std::size_t j = 0; j < d; ++j) g(i, j) = iz[j];
  }
  const auto orth = integer_kernel(g);
  const auto sat = integer_kernel(ZMatrix::from_rows(orth, d));
  if (sat.empty()) return {};
  const auto h = hermite_normal_form(ZMatrix::from_rows(sat, d)).h;
  std::vector<QVec> out;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    ZVec row = h.row_vector(i);
    bool zero = true;
    for (const auto& e : row) zero = zero && e == 0;
    if (!zero) out.push_back(n.from_coords(to_qvec(row)));
  }
  return out;
}

Integer index_of(std::span<const Rational> x) { return common_denominator(x); }

bool Polytope::contains(std::span<const Rational> x) const {
  for (const auto& h : halfspaces) {
    const Rational s = dot(h.a, x);
    if (h.strict ? !(s < h.b) : !(s <= h.b)) return false;
  }
  return true;
}

std::vector<ZVec> enumerate_integer_points(std::size_t k, const std::vector<HalfSpace>& halfspaces) {
  std::vector<LinearConstraint> closed;
  for (const auto& h : halfspaces) {
    if (h.a.size() != k) fail(ErrorCode::InvalidArgument, "halfspace width mismatch");
    closed.push_back({h.a, Relation::LessEqual, h.b});
  }
  auto satisfied = [&](std::span<const Rational> y) {
    for (const auto& h : halfspaces) {
      const Rational s = dot(h.a, y);
      if (h.strict ? !(s < h.b) : !(s <= h.b)) return false;
    }
    return true;
  };
  if (k == 0) {
    if (satisfied(QVec{})) return {ZVec{}};
    return {};
  }
  ZVec lo(k), hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    const QVec e = unit_vector(k, j);
    auto mn = optimize(k, closed, e, false);
    if (mn.status == LpStatus::Infeasible) return {};
    auto mx = optimize(k, closed, e, true);
    if (mn.status == LpStatus::Unbounded || mx.status == LpStatus::Unbounded)
      fail(ErrorCode::UnboundedRegion, "polytope is unbounded");
    lo[j] = ceil(mn.value);
    hi[j] = floor(mx.value);
    if (lo[j] > hi[j]) return {};
  }
  std::vector<ZVec> out;
  ZVec y = lo;
  QVec q(k);
  for (;;) {
    for (std::size_t j = 0; j < k; ++j) q[j] = y[j];
    if (satisfied(q)) out.push_back(y);
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (y[j] < hi[j]) {
        ++y[j];
        break;
      }
      y[j] = lo[j];
      if (j == 0) return out;
    }
  }
}

std::vector<QVec> enumerate_lattice_points(const Polytope& p, const AmbientLattice& n) {
  if (p.dim != n.dim()) fail(ErrorCode::InvalidArgument, "polytope and lattice dimensions differ");
  const QMatrix bt = n.basis().transposed();
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces) hs.push_back({bt.apply(h.a), h.b, h.strict});
  std::vector<QVec> out;
  for (const auto& y : enumerate_integer_points(n.dim(), hs)) out.push_back(n.from_coords(to_qvec(y)));
  return out;
}

Polytope convex_hull(const std::vector<QVec>& points, std::size_t dim) {
  if (points.size() < dim + 1) fail(ErrorCode::InvalidArgument, "too few points for a full-dimensional hull");
  std::set<std::pair<QVec, Rational>, bool (*)(const std::pair<QVec, Rational>&, const std::pair<QVec, Rational>&)>
      seen([](const std::pair<QVec, Rational>& a, const std::pair<QVec, Rational>& b) {
        if (a.first != b.first) return lex_less(a.first, b.first);
        return a.second < b.second;
      });
  Polytope out{dim, {}};
  const std::size_t m = points.size();
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  for (;;) {
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < dim; ++i) diffs.push_back(sub(points[idx[i]], points[idx[0]]));
    const auto normal = nullspace(QMatrix::from_rows(diffs, dim));
    if (normal.size() == 1) {
      QVec a = normal.front();
      Rational b = dot(a, points[idx[0]]);
      bool le = true, ge = true;
      for (const auto& p : points) {
        const Rational s = dot(a, p);
        if (s > b) le = false;
        if (s < b) ge = false;
      }
      if (le != ge) {
        if (ge) {
          a = negate(a);
          b = -b;
        }
        // Rescale to the primitive integral normal; the factor is positive.
        QVec na = to_qvec(integral_direction(a));
        Rational nb;
        for (std::size_t j = 0; j < dim; ++j)
          if (a[j] != 0) {
            nb = b * (na[j] / a[j]);
            break;
          }
        if (seen.insert({na, nb}).second) out.halfspaces.push_back({na, nb, false});
      }
    }
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (idx[i] < m - dim + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

bool in_convex_hull(const std::vector<QVec>& points, std::span<const Rational> x) {
  if (points.empty()) return false;
  const std::size_t m = points.size();
  const std::size_t n = x.size();
  std::vector<LinearConstraint> cs;
  for (std::size_t j = 0; j < n; ++j) {
    QVec row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = points[i][j];
    cs.push_back({row, Relation::Equal, x[j]});
  }
  cs.push_back({QVec(m, Rational(1)), Relation::Equal, 1});
  for (std::size_t i = 0; i < m; ++i) cs.push_back({unit_vector(m, i), Relation::GreaterEqual, 0});
  return feasible(m, cs);
}

}  // namespace torfol
