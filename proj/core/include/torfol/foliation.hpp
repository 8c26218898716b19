#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "torfol/divisor.hpp"
#include "torfol/fan.hpp"

namespace torfol {

// W ⊆ N_C modelled as its rational part L = W ∩ N (saturated) plus a complement of
// dimension g in general position: it holds no nonzero rational vector.
class FoliationSpace {
 public:
  FoliationSpace(const AmbientLattice& lattice, const std::vector<QVec>& generators, std::size_t generic_dim);

  static FoliationSpace full(const AmbientLattice& lattice);
  static FoliationSpace zero(const AmbientLattice& lattice);

  std::size_t ambient_dim() const noexcept { return n_; }
  const std::vector<QVec>& lattice_basis() const noexcept { return basis_; }
  std::size_t rational_rank() const noexcept { return basis_.size(); }
  std::size_t generic_dim() const noexcept { return generic_; }
  std::size_t rank() const noexcept { return basis_.size() + generic_; }
  bool is_algebraic() const noexcept { return generic_ == 0; }
  bool is_everything() const noexcept { return basis_.size() == n_; }

  // v ∈ W for rational v, i.e. v ∈ span_Q(L).
  bool contains(std::span<const Rational> v) const;
  // Rows cutting out span_Q(L).
  const std::vector<QVec>& equations() const noexcept { return equations_; }

 private:
  std::size_t n_ = 0;
  std::vector<QVec> basis_;
  std::vector<QVec> equations_;
  std::size_t generic_ = 0;
};

bool ray_is_invariant(std::span<const Rational> ray, const FoliationSpace& w);
TorusDivisor foliation_canonical_divisor(const Fan& fan, const FoliationSpace& w);

bool is_dicritical_pair(const Fan& fan, const RaySet& tau, const FoliationSpace& w);

// dim_C(W ∩ C tau) under the general-position model.
std::size_t intersection_dim(const Fan& fan, const RaySet& tau, const FoliationSpace& w);
bool is_singular_pair(const Fan& fan, const RaySet& tau, const FoliationSpace& w);

enum class StratumKind { Orbit, OrbitClosure };

struct ConeJoin {
  RaySet tau1, tau2, joined;
  bool in_fan = false;
  bool flagged = false;
};

struct LocusReport {
  std::vector<RaySet> cones;  // flagged cones, in fan.cones() order
  StratumKind kind = StratumKind::OrbitClosure;
  std::vector<RaySet> minimal_cones;  // irreducible components of the closure
  std::vector<std::vector<RaySet>> components;
  std::vector<ConeJoin> joins;  // pairs of minimal cones and their join
  bool is_connected = true;
  bool is_closed = true;
  bool model_dependent = false;  // W has a generic part
};

LocusReport dicritical_locus(const Fan& fan, const FoliationSpace& w);
LocusReport singular_locus(const Fan& fan, const FoliationSpace& w);

bool is_fano(const Fan& fan, const FoliationSpace& w);

struct ZeroDiscrepancyDivisor {
  QVec v0;
  RaySet support;      // rays not contained in W
  QVec coefficients;   // v0 = sum coefficients[i] * ray(support[i]), all > 0
  Fan subdivided;
  std::size_t new_ray; // index of v0 in subdivided
};

ZeroDiscrepancyDivisor find_zero_ld_divisor(const Fan& fan, const FoliationSpace& w);

}  // namespace torfol
