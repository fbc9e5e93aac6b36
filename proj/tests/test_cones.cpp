#include "doctest.h"
#include "oracles.hpp"
#include "puncta/monoid.hpp"

using namespace puncta;
using oracle::V;

namespace {

std::vector<IVec> L(std::initializer_list<std::vector<int>> vs) {
  std::vector<IVec> out;
  for (const auto& v : vs) out.push_back(V(v));
  return out;
}

// Every ray is extreme: contained, and its tight facets have rank dim-1 modulo equations.
void check_double_description(const Cone& c) {
  const std::size_t n = c.ambient_dim();
  for (const auto& r : c.rays()) {
    CHECK(c.contains(r));
    CHECK(gcd_of(r) == 1);
    std::vector<IVec> tight = c.equations();
    for (const auto& f : c.facets())
      if (dot(f, r) == 0) tight.push_back(f);
    for (const auto& l : c.lineality()) tight.push_back(l);
    CHECK(rank(rows_to_mat(tight, n)) == n - 1);
  }
  for (const auto& f : c.facets()) {
    std::vector<IVec> on = c.lineality();
    for (const auto& r : c.rays())
      if (dot(f, r) == 0) on.push_back(r);
    CHECK(rank(rows_to_mat(on, n)) == c.dim() - 1);
    for (const auto& r : c.rays()) CHECK(dot(f, r) >= 0);
  }
}

}  // namespace

TEST_CASE("dual cone examples") {
  Cone orth = Cone::orthant(2);
  CHECK(dual_cone(orth) == orth);
  Cone c = Cone::from_generators(2, L({{1, 0}, {1, 2}}));
  CHECK(dual_cone(c).rays() == L({{0, 1}, {2, -1}}));
  Cone z = Cone::zero(2);
  Cone zd = dual_cone(z);
  CHECK(zd.lineality().size() == 2);
  CHECK(zd.rays().empty());
  CHECK(zd == Cone::full(2));
}

TEST_CASE("dual is an involution and double description is consistent") {
  std::mt19937 rng(5);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = 2 + rng() % 3;
    std::size_t k = 1 + rng() % 5;
    std::vector<IVec> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(oracle::random_vec(rng, n, -3, 3));
    Cone c = Cone::from_generators(n, g);
    check_double_description(c);
    check_double_description(c.dual());
    CHECK(dual_cone(dual_cone(c)) == c);
    CHECK(Cone::from_inequalities(n, c.facets(), c.equations()) == c);
    for (const auto& x : oracle::simplex_box(n, 3)) {
      CHECK(c.contains(x) == oracle::in_cone_lp(g, x));
      CHECK(c.contains(neg(x)) == oracle::in_cone_lp(g, neg(x)));
    }
  }
}

TEST_CASE("faces") {
  CHECK(faces(Cone::orthant(2)).size() == 4);
  CHECK(faces(Cone::orthant(3)).size() == 8);
  auto ray = Cone::from_generators(1, L({{1}}));
  auto fr = faces(ray);
  REQUIRE(fr.size() == 2);
  CHECK(fr[0] == Cone::zero(1));
  CHECK(fr[1] == ray);
  auto sq = Cone::from_generators(3, L({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
  auto fs = faces(sq);
  CHECK(fs.size() == 10);
  for (const auto& f : fs) CHECK(is_face(f, sq));
  CHECK_FALSE(is_face(Cone::from_generators(3, L({{0, 0, 1}, {1, 1, 1}})), sq));
  CHECK_THROWS_AS(faces(Cone::orthant(4), 5), BudgetExceeded);
}

TEST_CASE("hilbert basis examples") {
  CHECK(hilbert_basis(ToricMonoid::free(2)) == L({{0, 1}, {1, 0}}));
  // Monoid dual to cone<(1,0),(1,2)>: lattice points of cone<(0,1),(2,-1)>.
  Cone sigma = Cone::from_generators(2, L({{1, 0}, {1, 2}}));
  auto p = ToricMonoid::from_dual_cone(sigma);
  CHECK(hilbert_basis(p) == L({{0, 1}, {1, 0}, {2, -1}}));
  // The monoid of lattice points in cone<(1,0),(1,2)> itself.
  auto p2 = ToricMonoid::from_dual_cone(sigma.dual());
  CHECK(hilbert_basis(p2) == L({{1, 0}, {1, 1}, {1, 2}}));
  auto q = ToricMonoid::from_generators(2, L({{2, 0}, {0, 2}, {1, 1}}));
  CHECK(hilbert_basis(q) == L({{0, 2}, {1, 1}, {2, 0}}));
  CHECK(q.contains(V({3, 1})));
  CHECK_FALSE(q.contains(V({1, 0})));
  auto units = ToricMonoid::from_dual_cone(Cone::from_generators(2, L({{1, 0}})));
  CHECK_THROWS_WITH(hilbert_basis(units), "not pointed");
}

TEST_CASE("hilbert basis against lattice point brute force") {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    std::size_t d = 2 + rng() % 2;
    std::size_t k = 2 + rng() % 3;
    std::vector<IVec> g;
    for (std::size_t i = 0; i < k; ++i) {
      IVec v = oracle::random_vec(rng, d, 0, 4);
      if (is_zero(v)) v[0] = 1;
      g.push_back(v);
    }
    auto p = ToricMonoid::from_dual_cone(Cone::from_generators(d, g).dual());
    std::vector<IVec> box;
    for (const auto& x : oracle::simplex_box(d, 8))
      if (oracle::in_cone_lp(g, x)) box.push_back(x);
    auto brute = oracle::irreducibles(box);
    std::set<IVec> hb_in_box;
    for (const auto& h : hilbert_basis(p)) {
      CHECK(p.contains(h));
      Integer sum = 0;
      for (auto& x : h) sum += x;
      if (sum <= 8) hb_in_box.insert(h);
    }
    CHECK(hb_in_box == brute);
    std::set<IVec> bs(box.begin(), box.end());
    CHECK(oracle::span_within(hilbert_basis(p), bs) == bs);
  }
}

TEST_CASE("localize along a face") {
  auto p = ToricMonoid::free(2);
  auto x_ray = Cone::from_generators(2, L({{1, 0}}));
  auto loc = localize_along_face(p, x_ray);
  CHECK(loc.monoid.rank() == 1);
  CHECK(hilbert_basis(loc.monoid) == L({{1}}));
  CHECK(loc.chi(V({3, 5})) == V({3}));
  auto full = localize_along_face(p, p.dual_cone());
  CHECK(full.chi.matrix == IMat::identity(2));
  auto zero = localize_along_face(p, Cone::zero(2));
  CHECK(zero.monoid.rank() == 0);
  CHECK(zero.chi(V({4, 1})).empty());
  CHECK_THROWS_WITH(localize_along_face(p, Cone::from_generators(2, L({{1, 1}}))), "not a face");

  // χ vanishes exactly on f^perp, checked on Hilbert bases.
  Cone sigma = Cone::from_generators(3, L({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 0, 1}}));
  auto q = ToricMonoid::from_dual_cone(sigma);
  for (const auto& f : faces(sigma)) {
    auto lf = localize_along_face(q, f);
    for (const auto& h : hilbert_basis(q)) {
      bool vanishes = true;
      for (const auto& r : f.rays())
        if (dot(h, r) != 0) vanishes = false;
      CHECK(is_zero(lf.chi(h)) == vanishes);
      CHECK(lf.monoid.contains(lf.chi(h)));
    }
  }
}

TEST_CASE("affine monoid membership") {
  AffineMonoid m(1, L({{2}, {3}}));
  CHECK(m.contains(V({0})));
  CHECK_FALSE(m.contains(V({1})));
  CHECK(m.contains(V({5})));
  CHECK(m.contains(V({7})));
  CHECK_FALSE(m.is_saturated());
  AffineMonoid units(2, L({{1, 0}, {-1, 0}, {0, 1}}));
  CHECK(units.contains(V({-4, 2})));
  CHECK_FALSE(units.contains(V({1, -1})));
  CHECK(units.is_saturated());
  AffineMonoid sq(2, L({{2, 0}, {0, 2}, {1, 1}}));
  CHECK(sq.is_saturated());
  AffineMonoid nosat(2, L({{1, 0}, {1, 2}, {0, 3}}));
  CHECK_FALSE(nosat.is_saturated());
}

TEST_CASE("prestabilization and contact orders") {
  auto n = ToricMonoid::free(1);
  IMat phi(2, 1);
  phi(0, 0) = 1;
  phi(1, 0) = -1;
  auto q0 = prestabilize(n, n, phi);
  REQUIRE(q0.extras.size() == 1);
  CHECK(q0.extras[0].first == V({1}));
  CHECK(q0.extras[0].second == -1);
  CHECK(contact_order_of(phi) == V({-1}));
  CHECK(q0.valid());
  CHECK(*max_extension_order(q0) == 0);
  CHECK(q0.contains(V({1}), -1));
  CHECK_FALSE(q0.contains(V({0}), -1));
  CHECK_FALSE(q0.contains(V({1}), -2));

  IMat triv(2, 1);
  triv(1, 0) = 1;
  auto t = prestabilize(n, n, triv);
  CHECK(t.extras.empty());
  CHECK_FALSE(max_extension_order(t).has_value());
  CHECK(contact_order_of(triv) == V({1}));

  IMat two(2, 1);
  two(0, 0) = 2;
  two(1, 0) = -1;
  CHECK(*max_extension_order(prestabilize(n, n, two)) == 1);

  auto n2 = ToricMonoid::free(2);
  IMat ab(3, 2);
  ab(0, 0) = 2;
  ab(1, 1) = 3;
  ab(2, 0) = -1;
  ab(2, 1) = -1;
  auto pa = prestabilize(n2, n2, ab);
  REQUIRE(pa.extras.size() == 2);
  CHECK(pa.extras[0] == std::make_pair(V({0, 3}), Integer(-1)));
  CHECK(pa.extras[1] == std::make_pair(V({2, 0}), Integer(-1)));
  CHECK(contact_order_of(ab) == V({-1, -1}));

  IMat bad(2, 1);
  bad(1, 0) = -1;
  CHECK_THROWS_WITH(prestabilize(n, n, bad), "invalid puncturing");
}

TEST_CASE("prestabilization does not depend on the generating set") {
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    auto p = ToricMonoid::free(2);
    auto q = ToricMonoid::free(2);
    IMat phi(3, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) phi(i, j) = int(rng() % 3) + 1;
    phi(2, 0) = -int(rng() % 2) - 1;
    phi(2, 1) = int(rng() % 3) - 1;
    auto a = prestabilize(p, q, phi);
    // Same monoid generated from a redundant generating set of P.
    PuncturedMonoid b{q, {}};
    for (const auto& h : L({{1, 0}, {0, 1}, {1, 1}, {2, 1}})) {
      IVec v = phi * h;
      b.extras.push_back({IVec(v.begin(), v.begin() + 2), v[2]});
    }
    auto aa = a.as_affine(), bb = b.as_affine();
    for (const auto& g : aa.gens()) CHECK(bb.contains(g));
    for (const auto& g : bb.gens()) CHECK(aa.contains(g));
    CHECK_FALSE(aa.contains(V({0, 0, -1})));
  }
}
