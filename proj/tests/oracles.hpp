#pragma once

// Independent brute-force oracles used by the test suites.

#include "puncta/linalg.hpp"
#include "puncta/lp.hpp"

#include <functional>
#include <random>
#include <set>

namespace oracle {

using namespace puncta;

inline IVec V(std::vector<int> v) { return IVec(v.begin(), v.end()); }

// x ∈ cone(gens) decided by an LP over the generator coefficients.
inline bool in_cone_lp(const std::vector<IVec>& gens, const IVec& x) {
  LinearProgram lp(gens.size());
  lp.nonneg.assign(gens.size(), true);
  for (std::size_t i = 0; i < x.size(); ++i) {
    QVec row(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = Rational(gens[j][i]);
    lp.add(row, LinearProgram::Sense::EQ, Rational(x[i]));
  }
  return solve_lp(lp).status == LPResult::Status::Optimal;
}

// All vectors of N^d with coordinate sum <= bound.
inline std::vector<IVec> simplex_box(std::size_t d, int bound) {
  std::vector<IVec> out;
  IVec x(d);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == d) {
      out.push_back(x);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      x[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, bound);
  return out;
}

// Irreducible elements among a finite downward-closed set of monoid elements.
inline std::set<IVec> irreducibles(const std::vector<IVec>& elems) {
  std::set<IVec> all(elems.begin(), elems.end());
  std::set<IVec> out;
  for (const auto& x : elems) {
    if (is_zero(x)) continue;
    bool red = false;
    for (const auto& y : elems) {
      if (is_zero(y) || y == x) continue;
      if (all.count(sub(x, y))) {
        red = true;
        break;
      }
    }
    if (!red) out.insert(x);
  }
  return out;
}

// ℕ-span of gens restricted to the elements of the given set.
inline std::set<IVec> span_within(const std::vector<IVec>& gens, const std::set<IVec>& box) {
  std::set<IVec> reach;
  std::vector<IVec> stack;
  IVec z = zeros(box.begin()->size());
  reach.insert(z);
  stack.push_back(z);
  while (!stack.empty()) {
    IVec x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      IVec y = add(x, g);
      if (box.count(y) && reach.insert(y).second) stack.push_back(y);
    }
  }
  return reach;
}

inline IVec random_vec(std::mt19937& rng, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  IVec v(d);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace oracle
