#include "doctest.h"
#include "oracles.hpp"
#include "puncta/io.hpp"

#include <algorithm>

using namespace puncta;
using oracle::V;

namespace {

const std::string kDir = PUNCTA_FIXTURES;

ConeComplex e1_fan() { return read_fan_file(kDir + "/e1_fan.json").complex; }
PuncturedType load(const std::string& name, const ConeComplex& cx) { return read_type_file(kDir + "/" + name, cx); }

TypeVertex vert(const std::string& id, int g, std::size_t sigma) {
  TypeVertex v;
  v.id = id;
  v.genus = g;
  v.sigma = sigma;
  return v;
}

TypeEdge edge(const std::string& id, std::size_t a, std::size_t b, std::size_t sigma, IVec u) {
  TypeEdge e;
  e.id = id;
  e.src = a;
  e.dst = b;
  e.sigma = sigma;
  e.u = std::move(u);
  return e;
}

TypeLeg leg(const std::string& id, std::size_t v, std::size_t sigma, IVec u, bool punctured) {
  TypeLeg l;
  l.id = id;
  l.vertex = v;
  l.sigma = sigma;
  l.u = std::move(u);
  l.punctured = punctured;
  return l;
}

// Every decoration-preserving relabelling, by exhaustive search over all permutations and flips.
std::size_t brute_force_aut(const PuncturedType& t, bool fix_legs) {
  const std::size_t nv = t.vertices.size(), ne = t.edges.size(), nl = t.legs.size();
  std::vector<std::size_t> pv(nv), pe(ne), pl(nl);
  std::iota(pv.begin(), pv.end(), 0);
  std::size_t count = 0;
  do {
    bool vok = true;
    for (std::size_t v = 0; v < nv; ++v) {
      const auto &a = t.vertices[v], &b = t.vertices[pv[v]];
      if (a.genus != b.genus || a.sigma != b.sigma || a.degrees != b.degrees) vok = false;
    }
    if (!vok) continue;
    std::size_t edge_maps = 0;
    std::iota(pe.begin(), pe.end(), 0);
    do {
      for (std::size_t mask = 0; mask < (std::size_t(1) << ne); ++mask) {
        bool ok = true;
        for (std::size_t k = 0; k < ne && ok; ++k) {
          const auto &e = t.edges[k], &f = t.edges[pe[k]];
          bool flip = (mask >> k) & 1;
          if (e.sigma != f.sigma) ok = false;
          else if (!flip) ok = pv[e.src] == f.src && pv[e.dst] == f.dst && e.u == f.u && e.src_arrow == f.src_arrow &&
                          e.dst_arrow == f.dst_arrow;
          else ok = pv[e.src] == f.dst && pv[e.dst] == f.src && neg(e.u) == f.u && e.src_arrow == f.dst_arrow &&
                    e.dst_arrow == f.src_arrow;
        }
        if (ok) ++edge_maps;
      }
    } while (std::next_permutation(pe.begin(), pe.end()));
    std::size_t leg_maps = 0;
    std::iota(pl.begin(), pl.end(), 0);
    do {
      bool ok = true;
      for (std::size_t k = 0; k < nl && ok; ++k) {
        const auto &l = t.legs[k], &m = t.legs[pl[k]];
        if (fix_legs && pl[k] != k) ok = false;
        if (pv[l.vertex] != m.vertex || l.sigma != m.sigma || l.u != m.u || l.punctured != m.punctured ||
            l.arrow != m.arrow)
          ok = false;
      }
      if (ok) ++leg_maps;
    } while (std::next_permutation(pl.begin(), pl.end()));
    count += edge_maps * leg_maps;
  } while (std::next_permutation(pv.begin(), pv.end()));
  return count;
}

void check_group(const std::vector<Automorphism>& g) {
  std::set<Automorphism> s(g.begin(), g.end());
  for (const auto& a : g) {
    CHECK(s.count(inverse(a)));
    CHECK(compose(a, inverse(a)) == compose(inverse(a), a));
    for (const auto& b : g) CHECK(s.count(compose(a, b)));
  }
}

}  // namespace

TEST_CASE("type files round trip") {
  ConeComplex cx = e1_fan();
  for (const char* name : {"e1_type.json", "e1_tau1.json", "e1_tau2.json", "e1_class.json"}) {
    PuncturedType t = load(name, cx);
    PuncturedType back = parse_type(emit_type(t, cx), cx);
    CHECK(same_type(t, back));
    CHECK(emit_type(back, cx) == emit_type(t, cx));
  }
  PuncturedType t = load("e1_type.json", cx);
  CHECK(t.vertices.size() == 3);
  CHECK(t.total_genus() == 0);
  CHECK(t.connected());
  CHECK(!t.is_global());
  CHECK(load("e1_class.json", cx).is_global());
}

TEST_CASE("type file errors carry paths") {
  ConeComplex cx = e1_fan();
  Json j = read_json_file(kDir + "/e1_type.json");
  Json bad = j;
  bad["edges"][0].erase("u");
  CHECK_THROWS_WITH(parse_type(bad, cx), doctest::Contains("/edges/0"));
  bad = j;
  bad["legs"][1]["sigma"] = "nowhere";
  CHECK_THROWS_WITH(parse_type(bad, cx), doctest::Contains("/legs/1/sigma"));
  bad = j;
  bad["vertices"][1]["sigma"] = "o";  // leg cone ray still fine, edge cone ray fine
  CHECK_NOTHROW(parse_type(bad, cx));
  bad = j;
  bad["edges"][0]["u"] = Json::array({1, 2});
  CHECK_THROWS_WITH(parse_type(bad, cx), doctest::Contains("wrong rank"));
  bad = j;
  bad["edges"] = Json::array();
  CHECK_THROWS_WITH(parse_type(bad, cx), doctest::Contains("disconnected"));
  bad["disconnected_allowed"] = true;
  CHECK_NOTHROW(parse_type(bad, cx));
}

TEST_CASE("splitting E1 at both edges") {
  ConeComplex cx = e1_fan();
  PuncturedType t = load("e1_type.json", cx);
  auto parts = split_type(t, {"E1", "E2"}, cx);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].vertices[0].id == "v1");
  CHECK(parts[1].vertices[0].id == "v2");
  CHECK(parts[2].vertices[0].id == "v3");
  // Central piece: two outgoing half-edges, marked since 1 lies in the ray.
  REQUIRE(parts[0].legs.size() == 2);
  for (const auto& l : parts[0].legs) {
    CHECK(l.u == V({1}));
    CHECK(!l.punctured);
    REQUIRE(l.origin);
    CHECK(l.origin->src_side);
  }
  // Outer pieces gain a punctured leg with the opposite contact order.
  for (std::size_t k : {1u, 2u}) {
    REQUIRE(parts[k].legs.size() == 3);
    const TypeLeg& h = parts[k].legs.back();
    CHECK(h.u == V({-1}));
    CHECK(h.punctured);
    CHECK(!h.origin->src_side);
    for (const auto& l : parts[k].legs) CHECK(l.vertex == 0);
  }
  CHECK(parts[1].legs.back().id == "E1.dst");
  for (const auto& p : parts) CHECK_NOTHROW(validate_type(p, cx));

  auto one = split_type(t, {"E2"}, cx);
  REQUIRE(one.size() == 2);
  CHECK(one[0].vertices.size() == 2);
  CHECK(one[0].edges.size() == 1);
  CHECK(split_type(t, {}, cx).size() == 1);
}

TEST_CASE("splitting a loop keeps one component with both half-edges") {
  ConeComplex cx = e1_fan();
  PuncturedType t;
  t.vertices = {vert("v", 1, 1)};
  t.edges = {edge("L", 0, 0, 1, V({0}))};
  resolve_arrows(t, cx);
  CHECK(t.first_betti() == 1);
  CHECK(t.total_genus() == 2);
  auto parts = split_type(t, {"L"}, cx);
  REQUIRE(parts.size() == 1);
  REQUIRE(parts[0].legs.size() == 2);
  CHECK(parts[0].legs[0].id == "L.src");
  CHECK(parts[0].legs[1].id == "L.dst");
  CHECK(parts[0].total_genus() == 1);
}

TEST_CASE("contractions of E1") {
  ConeComplex cx = e1_fan();
  PuncturedType t = load("e1_type.json", cx);
  PuncturedType t1 = load("e1_tau1.json", cx);
  PuncturedType t2 = load("e1_tau2.json", cx);

  CHECK(contraction_check(identity_contraction(t), cx).ok);
  CHECK(contraction_check(identity_contraction(t1), cx).ok);

  Contraction c1 = read_contraction_file(kDir + "/e1_to_tau1.json", t, cx);
  CHECK(contraction_check(c1, cx).ok);
  Contraction c2 = read_contraction_file(kDir + "/e1_to_tau2.json", t, cx);
  CHECK(contraction_check(c2, cx).ok);
  CHECK(c2.vertex_map == std::vector<std::size_t>{0, 1, 2});

  // The ray is not a face of o, so τ₂ does not contract onto τ₁; both contract onto the class.
  CHECK(!find_contraction(t2, t1, cx));
  PuncturedType g = load("e1_class.json", cx);
  auto c2g = find_contraction(t2, g, cx);
  auto c1g = find_contraction(t1, g, cx);
  REQUIRE(c2g);
  REQUIRE(c1g);
  CHECK(contraction_check(compose(*c2g, c2), cx).ok);
  CHECK(contraction_check(compose(*c1g, c1), cx).ok);
  CHECK(compose(*c2g, c2).vertex_map == compose(*c1g, c1).vertex_map);

  Contraction bad = c1;
  std::swap(bad.leg_map[0], bad.leg_map[2]);
  CHECK(!contraction_check(bad, cx).ok);

  bad = c1;
  bad.target.vertices[0].genus = 1;
  CHECK(contraction_check(bad, cx).message.find("genus") != std::string::npos);

  bad = c2;
  bad.edge_map[0] = std::nullopt;
  CHECK(!contraction_check(bad, cx).ok);

  PuncturedType fewer = t1;
  fewer.legs.pop_back();
  CHECK(!find_contraction(t, fewer, cx));
  Contraction dropped{t, fewer, c1.vertex_map, c1.edge_map, {0, 1, 2, 0}};
  CHECK(contraction_check(dropped, cx).message.find("legs never") != std::string::npos);

  PuncturedType flipped = t1;
  flipped.legs[2].u = V({3});
  CHECK(!find_contraction(t, flipped, cx));
}

TEST_CASE("contraction onto a global type uses contact classes") {
  ConeComplex cx = e1_fan();
  PuncturedType t = load("e1_type.json", cx);
  PuncturedType g = load("e1_class.json", cx);
  auto c = find_contraction(t, g, cx);
  REQUIRE(c);
  CHECK(contraction_check(*c, cx).ok);
  PuncturedType wrong = g;
  wrong.legs[0].u = V({-2});
  CHECK(!find_contraction(t, wrong, cx));
}

TEST_CASE("automorphism groups agree with brute force") {
  ConeComplex cx = e1_fan();
  PuncturedType t = load("e1_type.json", cx);
  auto fixed = automorphisms(t);
  CHECK(fixed.size() == 1);
  CHECK(brute_force_aut(t, true) == 1);
  auto free = automorphisms(t, nullptr, false);
  CHECK(free.size() == 2);
  CHECK(brute_force_aut(t, false) == 2);
  check_group(free);

  PuncturedType single;
  single.vertices = {vert("v", 0, 1)};
  single.legs = {leg("a", 0, 1, V({1}), false)};
  resolve_arrows(single, cx);
  CHECK(automorphisms(single).size() == 1);

  PuncturedType dumbbell;
  dumbbell.vertices = {vert("a", 1, 1), vert("b", 1, 1)};
  dumbbell.edges = {edge("e", 0, 1, 1, V({0}))};
  dumbbell.legs = {leg("x", 0, 1, V({1}), false), leg("y", 1, 1, V({1}), false)};
  resolve_arrows(dumbbell, cx);
  CHECK(automorphisms(dumbbell, nullptr, false).size() == 2);
  CHECK(brute_force_aut(dumbbell, false) == 2);
  CHECK(automorphisms(dumbbell).size() == 1);

  // Two parallel edges with zero contact: swaps and flips.
  PuncturedType banana;
  banana.vertices = {vert("a", 0, 1), vert("b", 0, 1)};
  banana.edges = {edge("e", 0, 1, 1, V({0})), edge("f", 0, 1, 1, V({0}))};
  resolve_arrows(banana, cx);
  auto bg = automorphisms(banana, nullptr, false);
  CHECK(bg.size() == brute_force_aut(banana, false));
  CHECK(bg.size() == 4);
  check_group(bg);

  // The branch swap moves p1 to p2, which have distinct images under the contraction.
  auto one = find_contraction(t, load("e1_tau1.json", cx), cx);
  REQUIRE(one);
  CHECK(automorphisms(t, &*one, false).size() == 1);
  CHECK_THROWS_WITH(automorphisms(banana, nullptr, false, 3), "budget exceeded");
}

TEST_CASE("class of a type") {
  ConeComplex cx = e1_fan();
  PuncturedType t = load("e1_type.json", cx);
  PuncturedType cls = class_of(t, cx);
  CHECK(cls.vertices.size() == 1);
  CHECK(cls.vertices[0].genus == 0);
  CHECK(cls.legs.size() == 4);
  CHECK(cx.cone(cls.vertices[0].sigma).id == "o");
  CHECK(same_type(cls, load("e1_class.json", cx)));
  CHECK(same_type(class_of(cls, cx), cls));

  PuncturedType two;
  two.vertices = {vert("a", 1, 1), vert("b", 2, 1)};
  two.vertices[0].degrees = V({1, 0});
  two.vertices[1].degrees = V({2, 5});
  two.edges = {edge("e", 0, 1, 1, V({0}))};
  resolve_arrows(two, cx);
  PuncturedType c2 = class_of(two, cx);
  CHECK(c2.vertices[0].genus == 3);
  CHECK(c2.vertices[0].degrees == V({3, 5}));
  two.edges.push_back(edge("f", 0, 1, 1, V({0})));
  resolve_arrows(two, cx);
  CHECK(class_of(two, cx).vertices[0].genus == 4);
}
