#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torfol/lattice.hpp"

namespace torfol {

// Sorted ray indices naming a cone of a fan.
using RaySet = std::vector<std::size_t>;

std::string to_string(const RaySet& s);

// Strongly convex rational cone generated by primitive, pairwise distinct, extremal rays.
class Cone {
 public:
  Cone(const AmbientLattice& lattice, std::vector<QVec> rays);
  static Cone zero(const AmbientLattice& lattice) { return Cone(lattice, {}); }

  const AmbientLattice& lattice() const noexcept { return lattice_; }
  const std::vector<QVec>& rays() const noexcept { return rays_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_simplicial() const noexcept { return dim_ == rays_.size(); }

  bool contains(std::span<const Rational> v) const;
  bool relint_contains(std::span<const Rational> v) const;

  // Faces as index sets into rays(), including {} and the full set; sorted by size then lexicographically.
  std::vector<RaySet> face_sets() const;

  // Covectors m with the cone equal to {x : m . x >= 0 for all m}; spans come in +/- pairs.
  std::vector<QVec> inequalities() const;

 private:
  AmbientLattice lattice_;
  std::vector<QVec> rays_;
  std::size_t dim_ = 0;
};

std::vector<Cone> faces(const Cone& sigma);

// Non-negative coefficients writing v in the generators, or nullopt if v is outside the cone.
std::optional<QVec> cone_coefficients(const std::vector<QVec>& rays, std::span<const Rational> v);
bool cone_contains(const std::vector<QVec>& rays, std::span<const Rational> v);
bool cone_relint_contains(const std::vector<QVec>& rays, std::span<const Rational> v);
bool is_strongly_convex(const std::vector<QVec>& rays, std::size_t dim);

class Fan {
 public:
  // Validates every fan axiom; throws InvalidFan / InvalidCone naming the failure.
  Fan(AmbientLattice lattice, std::vector<QVec> rays, std::vector<RaySet> max_cones);

  const AmbientLattice& lattice() const noexcept { return lattice_; }
  std::size_t dim() const noexcept { return lattice_.dim(); }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<QVec>& rays() const noexcept { return rays_; }
  const QVec& ray(std::size_t i) const { return rays_.at(i); }

  const std::vector<RaySet>& maximal_cones() const noexcept { return max_cones_; }
  // Every cone of the fan, sorted by ray count then lexicographically; starts with {}.
  const std::vector<RaySet>& cones() const noexcept { return cones_; }

  bool has_cone(const RaySet& s) const;
  std::size_t cone_dim(const RaySet& s) const;
  std::vector<QVec> cone_rays(const RaySet& s) const;
  Cone cone(const RaySet& s) const;

  bool is_simplicial() const noexcept { return simplicial_; }
  bool is_complete() const noexcept { return complete_; }

 private:
  AmbientLattice lattice_;
  std::vector<QVec> rays_;
  std::vector<RaySet> max_cones_;
  std::vector<RaySet> cones_;
  std::vector<std::size_t> cone_dims_;
  bool simplicial_ = true;
  bool complete_ = false;
};

bool is_complete(const Fan& fan);
bool is_simplicial(const Fan& fan);
bool is_face(const RaySet& tau, const RaySet& sigma);  // tau(1) ⊆ sigma(1)

// Star subdivision at a primitive v in the support; the identity when v is already a ray.
Fan star_subdivision(const Fan& fan, std::span<const Rational> v);

std::vector<RaySet> primitive_collections(const Fan& fan);

// The cone with v in its relative interior.
RaySet locate(const Fan& fan, std::span<const Rational> v);
// Some maximal cone containing v, or nullopt.
std::optional<std::size_t> containing_maximal_cone(const Fan& fan, std::span<const Rational> v);
bool in_support(const Fan& fan, std::span<const Rational> v);

bool closures_intersect(const Fan& fan, const RaySet& tau1, const RaySet& tau2);

// Index of ray v in the fan, if it is one.
std::optional<std::size_t> find_ray(const Fan& fan, std::span<const Rational> v);

}  // namespace torfol
