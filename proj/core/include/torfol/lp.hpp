#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torfol/rational.hpp"

namespace torfol {

enum class Relation { LessEqual, GreaterEqual, Equal, Less, Greater };

struct LinearConstraint {
  QVec coeffs;
  Relation rel = Relation::LessEqual;
  Rational rhs = 0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  QVec x;
};

// Exact two-phase simplex (Bland's rule) over free variables.
// Strict relations are not allowed here; see find_point.
LpSolution optimize(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                    const QVec& objective, bool maximize);

// A point satisfying every constraint, strict ones included, or nullopt.
std::optional<QVec> find_point(std::size_t num_vars, const std::vector<LinearConstraint>& constraints);

inline bool feasible(std::size_t num_vars, const std::vector<LinearConstraint>& constraints) {
  return find_point(num_vars, constraints).has_value();
}

}  // namespace torfol
