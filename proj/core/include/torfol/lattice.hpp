#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "torfol/lp.hpp"
#include "torfol/matrix.hpp"
#include "torfol/rational.hpp"

namespace torfol {

struct HermiteForm {
  ZMatrix h;  // row Hermite normal form
  ZMatrix u;  // unimodular, u * m == h
};

// Row-style HNF: pivots positive, entries above a pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const ZMatrix& m);

// Z-basis (as rows) of {x in Z^n : a x = 0}.
std::vector<ZVec> integer_kernel(const ZMatrix& a);

// Full-rank lattice N = B Z^n inside a fixed reference Q^n; columns of B form a basis.
class AmbientLattice {
 public:
  AmbientLattice() = default;
  explicit AmbientLattice(QMatrix basis);

  static AmbientLattice standard(std::size_t n);
  // Lattice spanned by the given vectors; they must span Q^n.
  static AmbientLattice generated_by(std::size_t n, const std::vector<QVec>& generators);

  std::size_t dim() const noexcept { return basis_.rows(); }
  const QMatrix& basis() const noexcept { return basis_; }
  std::vector<QVec> basis_vectors() const;

  QVec to_coords(std::span<const Rational> v) const;    // B^{-1} v
  QVec from_coords(std::span<const Rational> z) const;  // B z
  bool contains(std::span<const Rational> v) const;
  bool is_primitive(std::span<const Rational> v) const;

  friend bool operator==(const AmbientLattice& a, const AmbientLattice& b) { return a.basis_ == b.basis_; }

 private:
  QMatrix basis_;
  QMatrix inverse_;
};

// The primitive lattice point on the ray R>=0 v.
QVec primitive(std::span<const Rational> v, const AmbientLattice& n);

// Basis of span_Q(generators) ∩ N, in reference coordinates, in a canonical order.
std::vector<QVec> saturate(const std::vector<QVec>& generators, const AmbientLattice& n);

// Least d >= 1 with d x integral.
Integer index_of(std::span<const Rational> x);

// a . x <= b, or a . x < b when strict.
struct HalfSpace {
  QVec a;
  Rational b;
  bool strict = false;
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<HalfSpace> halfspaces;

  bool contains(std::span<const Rational> x) const;
};

// Exactly the points of N in P, sorted lexicographically by lattice coordinates.
// Throws UnboundedRegion when the closure of P is unbounded.
std::vector<QVec> enumerate_lattice_points(const Polytope& p, const AmbientLattice& n);

// Integer points y in Z^k with every halfspace (over y) satisfied, lexicographic.
std::vector<ZVec> enumerate_integer_points(std::size_t k, const std::vector<HalfSpace>& halfspaces);

// Facet description of conv(points); requires a full-dimensional hull.
Polytope convex_hull(const std::vector<QVec>& points, std::size_t dim);
bool in_convex_hull(const std::vector<QVec>& points, std::span<const Rational> x);

}  // namespace torfol
