#include "torfol/lp.hpp"

#include "torfol/error.hpp"
#include "torfol/matrix.hpp"

namespace torfol {
namespace {

// Standard form: minimize c.y subject to A y = b, y >= 0, b >= 0.
class Tableau {
 public:
  Tableau(QMatrix a, QVec b) : a_(std::move(a)), b_(std::move(b)) {}

  // Returns false when the objective is unbounded below.
  bool run(const QVec& cost, const std::vector<bool>& allowed) {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n && !enter; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (a_(i, j) != 0) reduced -= cost[basis_[i]] * a_(i, j);
        if (reduced < 0) enter = j;
      }
      if (!enter) return true;
      const std::size_t j = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (a_(i, j) <= 0) continue;
        Rational ratio = b_[i] / a_(i, j);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / a_(r, c);
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(r, j) *= inv;
    b_[r] *= inv;
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      if (i == r || a_(i, c) == 0) continue;
      const Rational f = a_(i, c);
      for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) -= f * a_(r, j);
      b_[i] -= f * b_[r];
    }
    basis_[r] = c;
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void remove_row(std::size_t r) {
    QMatrix na(a_.rows() - 1, a_.cols());
    QVec nb;
    std::vector<std::size_t> nbasis;
    for (std::size_t i = 0, k = 0; i < a_.rows(); ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < a_.cols(); ++j) na(k, j) = a_(i, j);
      nb.push_back(b_[i]);
      nbasis.push_back(basis_[i]);
      ++k;
    }
    a_ = std::move(na);
    b_ = std::move(nb);
    basis_ = std::move(nbasis);
  }

  QMatrix a_;
  QVec b_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution optimize(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                    const QVec& objective, bool maximize) {
  // Columns: x+ (num_vars), x- (num_vars), one slack per inequality, artificials.
  std::size_t slacks = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != num_vars) fail(ErrorCode::InvalidArgument, "constraint width mismatch");
    if (c.rel == Relation::Less || c.rel == Relation::Greater)
      fail(ErrorCode::InvalidArgument, "strict constraint passed to optimize");
    if (c.rel != Relation::Equal) ++slacks;
  }
  const std::size_t m = constraints.size();
  const std::size_t structural = 2 * num_vars + slacks;
  const std::size_t cols = structural + m;
  QMatrix a(m, cols);
  QVec b(m);
  std::size_t slack = 2 * num_vars;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    for (std::size_t j = 0; j < num_vars; ++j) {
      a(i, j) = c.coeffs[j];
      a(i, num_vars + j) = -c.coeffs[j];
    }
    if (c.rel == Relation::LessEqual) a(i, slack++) = 1;
    if (c.rel == Relation::GreaterEqual) a(i, slack++) = -1;
    b[i] = c.rhs;
    if (b[i] < 0) {
      for (std::size_t j = 0; j < structural; ++j) a(i, j) = -a(i, j);
      b[i] = -b[i];
    }
    a(i, structural + i) = 1;
  }

  Tableau tab(std::move(a), std::move(b));
  for (std::size_t i = 0; i < m; ++i) tab.basis_.push_back(structural + i);

  QVec phase1(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[structural + i] = 1;
  std::vector<bool> all(cols, true);
  tab.run(phase1, all);
  Rational infeas = 0;
  for (std::size_t i = 0; i < tab.basis_.size(); ++i)
    if (tab.basis_[i] >= structural) infeas += tab.b_[i];
  LpSolution sol;
  if (infeas != 0) return sol;

  // Drive remaining (zero-valued) artificials out of the basis.
  for (std::size_t i = 0; i < tab.basis_.size();) {
    if (tab.basis_[i] < structural) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < structural && !col; ++j)
      if (tab.a_(i, j) != 0) col = j;
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.remove_row(i);
    }
  }

  QVec cost(cols, Rational(0));
  if (!objective.empty()) {
    for (std::size_t j = 0; j < num_vars; ++j) {
      const Rational c = maximize ? -objective[j] : objective[j];
      cost[j] = c;
      cost[num_vars + j] = -c;
    }
  }
  std::vector<bool> allowed(cols, false);
  for (std::size_t j = 0; j < structural; ++j) allowed[j] = true;
  if (!tab.run(cost, allowed)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  QVec y(cols, Rational(0));
  for (std::size_t i = 0; i < tab.basis_.size(); ++i) y[tab.basis_[i]] = tab.b_[i];
  sol.status = LpStatus::Optimal;
  sol.x.assign(num_vars, Rational(0));
  for (std::size_t j = 0; j < num_vars; ++j) sol.x[j] = y[j] - y[num_vars + j];
  if (!objective.empty()) sol.value = dot(objective, sol.x);
  return sol;
}

std::optional<QVec> find_point(std::size_t num_vars, const std::vector<LinearConstraint>& constraints) {
  bool strict = false;
  for (const auto& c : constraints)
    if (c.rel == Relation::Less || c.rel == Relation::Greater) strict = true;
  if (!strict) {
    auto sol = optimize(num_vars, constraints, {}, false);
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    return sol.x;
  }
  // Maximize a slack eps in [0, 1] shared by all strict rows.
  std::vector<LinearConstraint> lifted;
  for (const auto& c : constraints) {
    LinearConstraint l{c.coeffs, c.rel, c.rhs};
    l.coeffs.push_back(0);
    if (c.rel == Relation::Less) {
      l.coeffs.back() = 1;
      l.rel = Relation::LessEqual;
    } else if (c.rel == Relation::Greater) {
      l.coeffs.back() = -1;
      l.rel = Relation::GreaterEqual;
    }
    lifted.push_back(std::move(l));
  }
  QVec e = unit_vector(num_vars + 1, num_vars);
  lifted.push_back({e, Relation::GreaterEqual, 0});
  lifted.push_back({e, Relation::LessEqual, 1});
  auto sol = optimize(num_vars + 1, lifted, e, true);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return std::nullopt;
  sol.x.pop_back();
  return sol.x;
}

}  // namespace torfol
