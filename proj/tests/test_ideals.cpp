#include "doctest.h"
#include "oracles.hpp"
#include "puncta/ideal.hpp"

using namespace puncta;
using oracle::V;

namespace {

std::vector<IVec> L(std::initializer_list<std::vector<int>> vs) {
  std::vector<IVec> out;
  for (const auto& v : vs) out.push_back(V(v));
  return out;
}

std::vector<IVec> box_elements(const ToricMonoid& p, int bound) {
  std::vector<IVec> out;
  for (const auto& x : oracle::simplex_box(p.ambient_rank(), bound))
    if (p.contains(x)) out.push_back(x);
  return out;
}

// m ∈ √I decided by testing k·m for k <= 16 (test-only oracle).
bool in_radical(const MonoidIdeal& i, const IVec& m) {
  for (int k = 1; k <= 16; ++k)
    if (i.contains(scale(Integer(k), m))) return true;
  return false;
}

// Z_f ⊆ V(√I) iff no element of √I vanishes on f; decided over a box.
bool brute_included(const MonoidIdeal& i, const Cone& f, const std::vector<IVec>& box) {
  const ToricMonoid& p = i.ambient();
  for (const auto& m : box) {
    IVec y = *p.coords(m);
    bool vanish = true;
    for (const auto& r : f.rays())
      if (dot(y, r) != 0) vanish = false;
    if (vanish && in_radical(i, m)) return false;
  }
  return true;
}

ToricMonoid mobius_stalk(int e) { return ToricMonoid::from_generators(2, L({{e, 0}, {0, e}, {1, 1}})); }

ToricMonoid random_monoid(std::mt19937& rng, std::size_t d) {
  std::vector<IVec> g;
  std::size_t k = d + rng() % 2;
  for (std::size_t i = 0; i < k; ++i) {
    IVec v = oracle::random_vec(rng, d, 0, 2);
    if (is_zero(v)) v[i % d] = 1;
    g.push_back(v);
  }
  return ToricMonoid::from_generators(d, g);
}

}  // namespace

TEST_CASE("ideal from a functional") {
  auto p = mobius_stalk(2);
  // u(a,b) = a - b, written in the coordinates of P^gp.
  IMat b = p.group_basis();
  IVec u(p.rank());
  for (std::size_t j = 0; j < p.rank(); ++j) u[j] = b(0, j) - b(1, j);
  auto i = ideal_from_functional(p, u);
  CHECK(i.gens() == L({{0, 2}, {2, 0}}));
  CHECK_FALSE(ideal_member(i, V({1, 1})));
  CHECK(ideal_member(i, V({2, 2})));
  CHECK(ideal_from_functional(p, zeros(p.rank())).gens().empty());
  auto n2 = ToricMonoid::free(2);
  CHECK(ideal_from_functional(n2, V({1, 0})).gens() == L({{1, 0}}));
  CHECK_FALSE(ideal_member(MonoidIdeal::empty(n2), V({0, 0})));
}

TEST_CASE("ideal from a functional matches the brute-force generating set") {
  std::mt19937 rng(31);
  for (int t = 0; t < 25; ++t) {
    auto p = random_monoid(rng, 2 + t % 2);
    IVec u = oracle::random_vec(rng, p.rank(), -2, 2);
    auto i = ideal_from_functional(p, u);
    auto box = box_elements(p, p.ambient_rank() == 2 ? 8 : 6);
    std::vector<IVec> all;
    for (const auto& m : box)
      if (dot(u, *p.coords(m)) != 0) all.push_back(m);
    auto brute = MonoidIdeal::generated(p, all);
    for (const auto& m : box) CHECK(i.contains(m) == brute.contains(m));
  }
}

TEST_CASE("sum and intersection") {
  auto q = ToricMonoid::free(3);
  auto a = MonoidIdeal::generated(q, L({{1, 1, 0}}));
  auto b = MonoidIdeal::generated(q, L({{1, 0, 1}}));
  CHECK(ideal_sum(a, b).gens() == L({{1, 0, 1}, {1, 1, 0}}));
  CHECK(ideals_equal(ideal_intersection(a, a), a));

  auto n2 = ToricMonoid::free(2);
  auto x = MonoidIdeal::generated(n2, L({{1, 0}}));
  auto y = MonoidIdeal::generated(n2, L({{0, 1}}));
  auto m = materialize(ideal_intersection(x, y));
  CHECK(m.complete);
  CHECK(m.gens == L({{1, 1}}));

  std::mt19937 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto p = random_monoid(rng, 2);
    auto box = box_elements(p, 7);
    std::vector<IVec> small;
    for (const auto& e : box)
      if (!is_zero(e)) small.push_back(e);
    auto pick = [&] {
      std::vector<IVec> g;
      for (int k = 0; k < 2; ++k) g.push_back(small[rng() % small.size()]);
      return MonoidIdeal::generated(p, g);
    };
    auto i = pick(), j = pick();
    auto s = ideal_sum(i, j), n = ideal_intersection(i, j);
    auto nm = materialize(n);
    CHECK(nm.complete);
    auto nmi = MonoidIdeal::generated(p, nm.gens);
    for (const auto& e : box) {
      CHECK(s.contains(e) == (i.contains(e) || j.contains(e)));
      CHECK(n.contains(e) == (i.contains(e) && j.contains(e)));
      CHECK(nmi.contains(e) == n.contains(e));
    }
    CHECK(ideals_equal(n, nmi));
    CHECK(ideals_equal(ideal_intersection(i, j), ideal_intersection(j, i)));
  }
}

TEST_CASE("face decomposition of two punctures") {
  auto q = ToricMonoid::free(3);
  auto n = ToricMonoid::free(1);
  std::vector<Puncture> pu;
  for (int k = 1; k <= 2; ++k) {
    IMat ev(1, 3);
    ev(0, 0) = 1;
    ev(0, k) = 1;
    pu.push_back({n, ev, V({-1})});
  }
  auto d = face_decomposition(q, pu);
  CHECK(d.faces.size() == 8);
  auto ex = d.excluded_faces();
  REQUIRE(ex.size() == 3);
  CHECK(ex[0] == Cone::zero(3));
  CHECK(ex[1] == Cone::from_generators(3, L({{0, 0, 1}})));
  CHECK(ex[2] == Cone::from_generators(3, L({{0, 1, 0}})));
  auto comps = radical_support_components(d);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].face == Cone::from_generators(3, L({{1, 0, 0}})));
  CHECK(comps[0].stratum_dim == 2);
  CHECK(comps[1].face == Cone::from_generators(3, L({{0, 1, 0}, {0, 0, 1}})));
  CHECK(comps[1].stratum_dim == 1);

  // The same support from the ideal generated by ρ+ℓ₁ and ρ+ℓ₂.
  auto i = MonoidIdeal::generated(q, L({{1, 1, 0}, {1, 0, 1}}));
  auto di = face_decomposition(i);
  CHECK(di.included == d.included);

  CHECK(face_decomposition(q, {}).excluded_faces().empty());
  auto all = radical_support_components(face_decomposition(q, {}));
  REQUIRE(all.size() == 1);
  CHECK(all[0].face == Cone::zero(3));
  CHECK(all[0].stratum_dim == 3);

  IMat id(1, 1);
  id(0, 0) = 1;
  CHECK(face_decomposition(n, {{n, id, V({1})}}).excluded_faces().empty());
  auto top = face_decomposition(n, {{n, id, V({-1})}});
  auto tc = radical_support_components(top);
  REQUIRE(tc.size() == 1);
  CHECK(tc[0].stratum_dim == 0);
  CHECK_THROWS_AS(face_decomposition(ToricMonoid::free(4), {}, 5), BudgetExceeded);
}

TEST_CASE("face decomposition agrees with brute-force radical membership") {
  std::mt19937 rng(41);
  for (int t = 0; t < 20; ++t) {
    auto p = random_monoid(rng, 2 + t % 2);
    auto box = box_elements(p, 4);
    std::vector<IVec> g;
    for (int k = 0; k < 2; ++k) g.push_back(box[1 + rng() % (box.size() - 1)]);
    auto i = MonoidIdeal::generated(p, g);
    auto d = face_decomposition(i);
    for (std::size_t k = 0; k < d.faces.size(); ++k)
      CHECK(d.included[k] == brute_included(i, d.faces[k], box));
    // Upward closed.
    for (std::size_t a = 0; a < d.faces.size(); ++a)
      for (std::size_t b = 0; b < d.faces.size(); ++b)
        if (d.included[a] && d.faces[b].contains(d.faces[a])) CHECK(d.included[b]);
    auto j = MonoidIdeal::generated(p, {g[0]});
    auto n = ideal_intersection(i, j);
    auto dn = face_decomposition(n);
    for (std::size_t k = 0; k < dn.faces.size(); ++k)
      CHECK(dn.included[k] == brute_included(n, dn.faces[k], box));
  }
}

TEST_CASE("stratum lengths") {
  for (int e = 2; e <= 4; ++e) {
    auto p = mobius_stalk(e);
    IMat b = p.group_basis();
    IVec u(p.rank());
    for (std::size_t j = 0; j < p.rank(); ++j) u[j] = b(0, j) - b(1, j);
    auto i = ideal_from_functional(p, u);
    CHECK(*stratum_length(p, i, p.dual_cone()) == e);
  }
  auto n2 = ToricMonoid::free(2);
  auto whole = MonoidIdeal::generated(n2, L({{0, 0}}));
  CHECK(*stratum_length(n2, whole, n2.dual_cone()) == 0);
  auto x2 = MonoidIdeal::generated(n2, L({{2, 0}}));
  CHECK_FALSE(stratum_length(n2, x2, n2.dual_cone(), 500).has_value());
  auto xray = Cone::from_generators(2, L({{1, 0}}));
  CHECK(*stratum_length(n2, x2, xray) == 2);
  auto yray = Cone::from_generators(2, L({{0, 1}}));
  CHECK(*stratum_length(n2, x2, yray) == 0);
  CHECK(*stratum_length(n2, x2, Cone::zero(2)) == 0);
  CHECK(*stratum_length(n2, MonoidIdeal::empty(n2), Cone::zero(2)) == 1);
  auto box = MonoidIdeal::generated(n2, L({{2, 0}, {0, 3}}));
  CHECK(*stratum_length(n2, box, n2.dual_cone()) == 6);
}
