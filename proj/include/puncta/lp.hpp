#pragma once

#include "puncta/linalg.hpp"

namespace puncta {

struct LinearProgram {
  enum class Sense { LE, GE, EQ };
  struct Constraint {
    QVec coef;
    Sense sense;
    Rational rhs;
  };
  std::size_t num_vars = 0;
  std::vector<bool> nonneg;  // per variable; free when false
  std::vector<Constraint> constraints;
  QVec objective;  // maximized

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), nonneg(n, false), objective(n) {}
  void add(QVec coef, Sense s, Rational rhs) { constraints.push_back({std::move(coef), s, std::move(rhs)}); }
};

struct LPResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  QVec x;
  Rational value;
};

// Two-phase dense simplex over the rationals with Bland's rule.
LPResult solve_lp(const LinearProgram& lp);

// Finds x with strict[i]·x > 0, weak[j]·x >= 0, eq[k]·x = 0, or nullopt.
// The returned witness is integral.
std::optional<IVec> strict_feasible(std::size_t n, const std::vector<QVec>& strict,
                                    const std::vector<QVec>& weak, const std::vector<QVec>& eq);

}  // namespace puncta
