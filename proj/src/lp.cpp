#include "puncta/lp.hpp"

namespace puncta {

namespace {

struct Tableau {
  std::size_t m = 0, n = 0;  // constraints, columns (excluding rhs)
  std::vector<QVec> t;       // m rows of length n + 1
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j = 0; j <= n; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Minimizes cost·x over allowed columns; false when unbounded.
  bool minimize(const QVec& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < n && enter == n; ++j) {
        if (!allowed[j]) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (t[i][j] != 0) d -= cost[basis[i]] * t[i][j];
        if (d < 0) enter = j;
      }
      if (enter == n) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][n] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  // Column layout: split variables, slacks, artificials.
  std::vector<std::size_t> pos(lp.num_vars), negc(lp.num_vars, SIZE_MAX);
  std::size_t ncol = 0;
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    pos[v] = ncol++;
    if (!lp.nonneg[v]) negc[v] = ncol++;
  }
  const std::size_t m = lp.constraints.size();
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].sense != LinearProgram::Sense::EQ) slack[i] = ncol++;
  const std::size_t first_art = ncol;
  ncol += m;

  Tableau tb;
  tb.m = m;
  tb.n = ncol;
  tb.t.assign(m, QVec(ncol + 1));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    auto& row = tb.t[i];
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
      row[pos[v]] = c.coef[v];
      if (negc[v] != SIZE_MAX) row[negc[v]] = -c.coef[v];
    }
    if (c.sense == LinearProgram::Sense::LE) row[slack[i]] = 1;
    if (c.sense == LinearProgram::Sense::GE) row[slack[i]] = -1;
    row[ncol] = c.rhs;
    if (row[ncol] < 0)
      for (auto& x : row) x = -x;
    row[first_art + i] = 1;
    tb.basis[i] = first_art + i;
  }

  QVec cost1(ncol);
  for (std::size_t i = 0; i < m; ++i) cost1[first_art + i] = 1;
  std::vector<bool> all(ncol, true);
  tb.minimize(cost1, all);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] >= first_art) infeas += tb.t[i][ncol];
  if (infeas > 0) return {LPResult::Status::Infeasible, {}, 0};

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tb.m;) {
    if (tb.basis[i] < first_art) {
      ++i;
      continue;
    }
    std::size_t c = first_art;
    for (std::size_t j = 0; j < first_art; ++j)
      if (tb.t[i][j] != 0) {
        c = j;
        break;
      }
    if (c < first_art) {
      tb.pivot(i, c);
      ++i;
    } else {
      tb.t.erase(tb.t.begin() + i);
      tb.basis.erase(tb.basis.begin() + i);
      --tb.m;
    }
  }

  QVec cost2(ncol);
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    cost2[pos[v]] = -lp.objective[v];
    if (negc[v] != SIZE_MAX) cost2[negc[v]] = lp.objective[v];
  }
  std::vector<bool> allowed(ncol, true);
  for (std::size_t j = first_art; j < ncol; ++j) allowed[j] = false;
  if (!tb.minimize(cost2, allowed)) return {LPResult::Status::Unbounded, {}, 0};

  QVec col(ncol);
  for (std::size_t i = 0; i < tb.m; ++i) col[tb.basis[i]] = tb.t[i][ncol];
  LPResult res{LPResult::Status::Optimal, QVec(lp.num_vars), 0};
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    res.x[v] = col[pos[v]];
    if (negc[v] != SIZE_MAX) res.x[v] -= col[negc[v]];
    res.value += lp.objective[v] * res.x[v];
  }
  return res;
}

std::optional<IVec> strict_feasible(std::size_t n, const std::vector<QVec>& strict,
                                    const std::vector<QVec>& weak, const std::vector<QVec>& eq) {
  // Homogeneous system: maximize eps <= 1 subject to strict·x >= eps.
  LinearProgram lp(n + 1);
  lp.objective[n] = 1;
  auto ext = [&](const QVec& a, Rational last) {
    QVec r = a;
    r.push_back(last);
    return r;
  };
  for (const auto& a : strict) lp.add(ext(a, -1), LinearProgram::Sense::GE, 0);
  for (const auto& a : weak) lp.add(ext(a, 0), LinearProgram::Sense::GE, 0);
  for (const auto& a : eq) lp.add(ext(a, 0), LinearProgram::Sense::EQ, 0);
  QVec cap(n + 1);
  cap[n] = 1;
  lp.add(cap, LinearProgram::Sense::LE, 1);
  auto res = solve_lp(lp);
  if (res.status != LPResult::Status::Optimal || res.value <= 0) return std::nullopt;
  QVec x(res.x.begin(), res.x.begin() + n);
  return primitive(x);
}

}  // namespace puncta
