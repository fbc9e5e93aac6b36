#include "doctest.h"
#include "puncta/linalg.hpp"
#include "puncta/lp.hpp"

#include <functional>
#include <random>

using namespace puncta;

namespace {

IMat M(std::vector<std::vector<int>> rows, std::size_t cols) {
  IMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

IVec V(std::vector<int> v) { return IVec(v.begin(), v.end()); }

IMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

void check_smith(const IMat& m) {
  SmithForm s = smith_normal_form(m);
  IMat d = s.left * m * s.right;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i == j && i < s.diag.size())
        CHECK(d(i, j) == s.diag[i]);
      else
        CHECK(d(i, j) == 0);
    }
  CHECK(abs(determinant(s.left)) == 1);
  CHECK(abs(determinant(s.right)) == 1);
  for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
  for (std::size_t i = 0; i < s.rank; ++i) CHECK(s.diag[i] > 0);
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(M({{2, 0}, {0, 3}}, 2));
  CHECK(s.diag == V({1, 6}));
  check_smith(M({{2, 0}, {0, 3}}, 2));

  auto id = smith_normal_form(IMat::identity(3));
  CHECK(id.diag == V({1, 1, 1}));
  CHECK(id.left == IMat::identity(3));
  CHECK(id.right == IMat::identity(3));

  CHECK(smith_normal_form(M({{2}}, 1)).diag == V({2}));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    check_smith(random_matrix(rng, r, c, -6, 6));
  }
  check_smith(IMat(0, 3));
  check_smith(IMat(2, 0));
}

TEST_CASE("solve_integral examples") {
  CHECK_FALSE(solve_integral(M({{2}}, 1), V({3})).has_value());
  auto s = solve_integral(M({{2}}, 1), V({4}));
  REQUIRE(s.has_value());
  CHECK(s->particular == V({2}));
  CHECK(s->kernel.empty());
  auto t = solve_integral(IMat::identity(3), V({4, -1, 7}));
  REQUIRE(t.has_value());
  CHECK(t->particular == V({4, -1, 7}));
  CHECK(t->kernel.empty());
}

TEST_CASE("solve_integral agrees with brute force") {
  std::mt19937 rng(11);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IMat m = random_matrix(rng, r, c, -3, 3);
    IVec b(r);
    for (auto& x : b) x = int(rng() % 9) - 4;
    auto s = solve_integral(m, b);
    // A solution found in the box forces a positive answer.
    bool brute = false;
    IVec x(c);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (brute) return;
      if (i == c) {
        if (m * x == b) brute = true;
        return;
      }
      for (int v = -6; v <= 6; ++v) {
        x[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    if (brute) CHECK(s.has_value());
    if (s) {
      CHECK(m * s->particular == b);
      for (const auto& k : s->kernel) CHECK(is_zero(m * k));
      CHECK(s->kernel.size() == c - rank(m));
    }
  }
}

TEST_CASE("saturate_sublattice examples and idempotence") {
  auto a = saturate_sublattice({V({2, 0}), V({0, 2})}, 2);
  CHECK(a == std::vector<IVec>{V({1, 0}), V({0, 1})});
  CHECK(saturate_sublattice({V({2, 4})}, 2) == std::vector<IVec>{V({1, 2})});
  CHECK(saturate_sublattice({}, 2).empty());
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::size_t k = 1 + rng() % 3;
    std::vector<IVec> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(random_matrix(rng, 1, 4, -5, 5).row(0));
    auto s = saturate_sublattice(g, 4);
    CHECK(saturate_sublattice(s, 4) == s);
    CHECK(s.size() == rank(rows_to_mat(g, 4)));
    if (!s.empty()) CHECK(lattice_index(cols_to_mat(s, 4)) == 1);
  }
}

TEST_CASE("lattice maps check their lattices") {
  Lattice a{"A", 2}, b{"B", 1};
  LatticeMap f(M({{1, 2}}, 2), a, b);
  CHECK(f(LatticeVec(V({1, 1}), a)).coords == V({3}));
  CHECK_THROWS(f(LatticeVec(V({1}), b)));
  CHECK_THROWS(LatticeMap(M({{1, 2}}, 2), b, a));
  LatticeMap g(M({{2}}, 1), b, b);
  CHECK(compose(g, f).matrix == M({{2, 4}}, 2));
  CHECK_THROWS(compose(f, g));
}

TEST_CASE("rational lp") {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5)
  LinearProgram lp(2);
  lp.nonneg = {true, true};
  lp.objective = {1, 1};
  lp.add({1, 2}, LinearProgram::Sense::LE, 4);
  lp.add({3, 1}, LinearProgram::Sense::LE, 6);
  auto r = solve_lp(lp);
  REQUIRE(r.status == LPResult::Status::Optimal);
  CHECK(r.value == Rational(14, 5));
  LinearProgram bad(1);
  bad.add({1}, LinearProgram::Sense::GE, 2);
  bad.add({1}, LinearProgram::Sense::LE, 1);
  CHECK(solve_lp(bad).status == LPResult::Status::Infeasible);
  LinearProgram unb(1);
  unb.objective = {1};
  CHECK(solve_lp(unb).status == LPResult::Status::Unbounded);
  CHECK(strict_feasible(2, {{1, 0}, {0, 1}}, {}, {}).has_value());
  CHECK_FALSE(strict_feasible(1, {{1}, {-1}}, {}, {}).has_value());
}
