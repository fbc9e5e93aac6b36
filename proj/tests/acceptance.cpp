// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "generators.hpp"
#include "oracles.hpp"
#include "type_oracles.hpp"
#include "puncta/degenerate.hpp"
#include "puncta/glue.hpp"
#include "puncta/io.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>

using namespace puncta;
using oracle::V;

namespace {

const std::string kDir = PUNCTA_FIXTURES;

// Collects the first failed expectation of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

struct E1 {
  FanFile fan = read_fan_file(kDir + "/e1_fan.json");
  const ConeComplex& cx = fan.complex;
  PuncturedType t = read_type_file(kDir + "/e1_type.json", cx);
  PuncturedType t1 = read_type_file(kDir + "/e1_tau1.json", cx);
  PuncturedType t2 = read_type_file(kDir + "/e1_tau2.json", cx);
  PuncturedType g = read_type_file(kDir + "/e1_class.json", cx);
};

std::set<std::string> formatted(const BasicCone& b, const std::vector<IVec>& gens) {
  std::set<std::string> out;
  for (const auto& g : gens) out.insert(b.format(g));
  return out;
}

void c1(Check& c) {
  E1 e;
  BasicCone b = basic_cone(e.t, e.cx);
  c.expect(b.rank() == 3, "rank 3");
  c.expect(b.monoid.hilbert_basis().size() == 3 && b.cone.rays().size() == 3, "Q free of rank 3");
  c.expect(formatted(b, puncturing_ideal(e.t, b, e.cx).gens()) == std::set<std::string>{"rho+l1", "rho+l2"},
           "puncturing generators");
  FaceDecomposition d = puncturing_decomposition(e.t, b, e.cx);
  auto ex = d.excluded_faces();
  std::set<std::set<IVec>> got;
  for (const auto& f : ex) got.insert(std::set<IVec>(f.rays().begin(), f.rays().end()));
  // Coordinates are (rho, l1, l2).
  std::set<std::set<IVec>> want{{}, {V({0, 1, 0})}, {V({0, 0, 1})}};
  c.expect(got == want, "excluded faces");
  std::multiset<std::size_t> dims;
  for (const auto& s : radical_support_components(d)) dims.insert(s.stratum_dim);
  c.expect(dims == std::multiset<std::size_t>{1, 2}, "stratum dimensions");
}

void c2(Check& c) {
  IMat ev(2, 2);
  ev(0, 0) = 2;
  ev(1, 1) = 3;
  MonoidIdeal k = puncturing_ideal(ToricMonoid::free(2), {{ToricMonoid::free(2), ev, V({-1, -1})}});
  std::set<IVec> gens(k.gens().begin(), k.gens().end());
  c.expect(gens == std::set<IVec>{V({2, 0}), V({0, 3})}, "generators");
}

void c3(Check& c) {
  for (int e = 1; e <= 3; ++e) {
    auto p = ToricMonoid::from_generators(2, {V({e, 0}), V({0, e}), V({1, 1})});
    IMat b = p.group_basis();
    IVec u(p.rank());
    for (std::size_t j = 0; j < p.rank(); ++j) u[j] = b(0, j) - b(1, j);
    LocalStratum ls = local_evaluation_stratum(p, {u});
    std::set<IVec> gens(ls.ideal.gens().begin(), ls.ideal.gens().end());
    c.expect(gens == std::set<IVec>{V({e, 0}), V({0, e})}, "I_u generators for e=" + std::to_string(e));
    auto len = stratum_length(p, ls.ideal, p.dual_cone());
    c.expect(len && *len == e, "stratum length for e=" + std::to_string(e));
    c.expect(ls.reduced_support.size() == 1 && ls.reduced_support[0] == p.dual_cone(),
             "reduced support for e=" + std::to_string(e));
  }
}

void c4(Check& c) {
  for (std::size_t l : {2, 3}) {
    ConeComplex cx = build_mobius_fan(l);
    const IVec u = V({0, 1, 0});
    ContactClass cls = contact_orbit(cx, cx.index_of("o"), cx.index_of("s_0"), u);
    bool both = false;
    for (std::size_t i = 0; i < cls.star.objects.size(); ++i) {
      auto r = cls.representatives(i);
      if (std::find(r.begin(), r.end(), u) != r.end() && std::find(r.begin(), r.end(), neg(u)) != r.end())
        both = true;
    }
    c.expect(both && cls.monodromy_free == Tri::False, "monodromy for l=" + std::to_string(l));
    ContactComponent comp = connected_contact_component(cx, cx.index_of("s_0"), u);
    c.expect(comp.complete && comp.pieces.size() == 2 * l, "pieces for l=" + std::to_string(l));
  }
}

void c5(Check& c) {
  auto n = ToricMonoid::free(1);
  IMat phi(2, 1);
  phi(0, 0) = 1;
  phi(1, 0) = -1;
  c.expect(contact_order_of(phi) == V({-1}), "contact order");
  auto m = max_extension_order(prestabilize(n, n, phi));
  c.expect(m && *m == 0, "max extension order");
  E1 e;
  PuncturedType curve;
  TypeVertex v;
  v.id = "v";
  v.sigma = 1;
  v.degrees = V({1});
  curve.vertices.push_back(v);
  TypeLeg l;
  l.id = "p";
  l.sigma = 1;
  l.u = V({-1});
  l.punctured = true;
  curve.legs.push_back(l);
  resolve_arrows(curve, e.cx);
  const GlobalSections& gs = *e.fan.sections;
  Integer pairing = dot(gs.sections[1] * l.u, V({1}));
  c.expect(pairing == -1, "sum of pairings");
  c.expect(total_degree_identity(curve, gs, e.cx), "total degree identity");
}

void c6(Check& c) {
  E1 e;
  Realization rg = realizable(e.g, e.cx);
  c.expect(!rg.realizable, "class not realizable");
  Realization r1 = realizable(e.t1, e.cx), r2 = realizable(e.t2, e.cx);
  c.expect(r1.realizable && r1.witness == V({1}), "tau1 realizable with witness");
  c.expect(r2.realizable && r2.witness == V({1, 1}), "tau2 realizable with witness");
  c.expect(moduli_dimension(e.t1, e.cx, parse_base("smooth:0")) == 0, "dim tau1");
  c.expect(moduli_dimension(e.t2, e.cx, parse_base("smooth:0")) == -1, "dim tau2");
  // Independent rank of Q∨ from its rays.
  for (const auto* t : {&e.t1, &e.t2}) {
    BasicCone b = basic_cone(*t, e.cx);
    Integer expect = 3 * t->total_genus() - 3 + Integer(t->legs.size()) -
                     Integer(rank(rows_to_mat(b.cone.rays(), b.rank())));
    c.expect(moduli_dimension(*t, e.cx, parse_base("smooth:0")) == expect, "rank cross-check");
  }
}

// Inserts a vertex in the middle of an edge; the source contracts the second half onto the target.
std::optional<Contraction> subdivide(const PuncturedType& t, std::size_t edge, const ConeComplex& cx) {
  PuncturedType s = t;
  TypeEdge e = t.edges[edge];
  TypeVertex w;
  w.id = "mid";
  w.sigma = e.sigma;
  s.vertices.push_back(w);
  TypeEdge b = e;
  b.id = e.id + "b";
  b.src = s.vertices.size() - 1;
  b.src_arrow = kUnresolved;
  s.edges[edge].dst = b.src;
  s.edges[edge].dst_arrow = kUnresolved;
  s.edges.push_back(b);
  resolve_arrows(s, cx);
  validate_type(s, cx);
  Contraction c;
  c.source = s;
  c.target = t;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) c.vertex_map.push_back(v);
  c.vertex_map.push_back(e.dst);
  for (std::size_t k = 0; k < t.edges.size(); ++k) c.edge_map.push_back(k);
  c.edge_map.push_back(std::nullopt);
  for (std::size_t k = 0; k < t.legs.size(); ++k) c.leg_map.push_back(k);
  if (!contraction_check(c, cx).ok) return std::nullopt;
  return c;
}

void c7(Check& c) {
  E1 e;
  BasicCone b = basic_cone(e.t, e.cx);
  auto k1 = find_contraction(e.t, e.t1, e.cx), k2 = find_contraction(e.t, e.t2, e.cx);
  c.expect(k1 && k2, "E1 contractions exist");
  if (!k1 || !k2) return;
  c.expect(verify_realizable_marking(*k1, b, e.cx), "tau1 marking");
  c.expect(verify_realizable_marking(*k2, b, e.cx), "tau2 marking");
  c.expect(formatted(b, marking_ideal(*k1, b, e.cx).basic_gens) == std::set<std::string>{"rho"}, "tau1 ideal");
  c.expect(formatted(b, marking_ideal(*k2, b, e.cx).basic_gens) == std::set<std::string>{"l1", "l2"},
           "tau2 ideal");

  ConeComplex cx = gen::orthant_fan(3);
  std::mt19937 rng(2024);
  int done = 0;
  for (int attempt = 0; attempt < 2000 && done < 25; ++attempt) {
    PuncturedType t = gen::random_type(rng, cx, {3, 3, 3});
    if (t.edges.empty() || !realizable(t, cx).realizable) continue;
    auto con = subdivide(t, rng() % t.edges.size(), cx);
    if (!con || !realizable(con->source, cx).realizable) continue;
    BasicCone bs = basic_cone(con->source, cx);
    c.expect(verify_realizable_marking(*con, bs, cx), "random contraction " + std::to_string(done));
    ++done;
  }
  c.expect(done == 25, "25 random realizable contractions generated");
}

void c8(Check& c) {
  ConeComplex cx = gen::orthant_fan(3);
  std::mt19937 rng(99);
  int done = 0;
  while (done < 100) {
    PuncturedType t = gen::random_type(rng, cx);
    if (t.edges.empty()) continue;
    std::vector<std::string> ids;
    for (const auto& e : t.edges)
      if (rng() % 2) ids.push_back(e.id);
    if (ids.empty()) ids.push_back(t.edges[rng() % t.edges.size()].id);
    std::vector<LegMatch> m;
    for (const auto& id : ids) m.push_back({id + ".src", id + ".dst"});
    PuncturedType g = glue_types(split_type(t, ids, cx), m, cx);
    c.expect(canonical_key(g) == canonical_key(t) && oracle::count_isos(g, t) > 0,
             "isomorphic after round trip " + std::to_string(done));
    c.expect(oracle::same_basic_cone(g, t, cx), "basic cones equal " + std::to_string(done));
    ++done;
  }
}

void c9(Check& c) {
  std::mt19937 rng(123);
  int done = 0;
  while (done < 200) {
    std::size_t n = 1 + rng() % 3;
    std::vector<IVec> rays;
    for (std::size_t i = 0; i < n; ++i) rays.push_back(unit(n, i));
    IVec extra = oracle::random_vec(rng, n, -1, 2);
    rays.push_back(extra);
    Cone dual = Cone::from_generators(n, rays);
    if (!dual.pointed() || dual.dim() != n) continue;
    ToricMonoid q = ToricMonoid::from_dual_cone(dual);
    auto element = [&] {
      IVec r = zeros(n);
      for (const auto& h : q.hilbert_basis()) r = add(r, scale(Integer(int(rng() % 3)), h));
      return r;
    };
    IVec r1 = element(), r2 = element();
    NodeMonoidData d = node_monoid(q, r1, r2);
    const std::string at = " (instance " + std::to_string(done) + ")";
    c.expect(d.integral && d.saturated, "integral and saturated" + at);
    c.expect(d.rho_q == add(r1, r2), "rho_q" + at);
    for (int s = 0; s < 20; ++s) {
      IVec xi = zeros(n);
      for (const auto& r : dual.rays()) xi = add(xi, scale(Integer(int(rng() % 4)), r));
      Integer l1 = dot(r1, xi), l2 = dot(r2, xi);
      c.expect(dot(d.rho_q, xi) == l1 + l2, "additive length" + at);
      c.expect(d.dual.contains(concat(xi, IVec{l1})) && d.dual.contains(concat(xi, IVec{l1 + l2})) &&
                   !d.dual.contains(concat(xi, IVec{l1 + l2 + 1})),
               "split lengths" + at);
    }
    ++done;
  }
}

void c10(Check& c) {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    std::size_t d = 2 + rng() % 2;
    std::vector<IVec> g;
    for (std::size_t i = 0; i < 2 + rng() % 3; ++i) {
      IVec v = oracle::random_vec(rng, d, 0, 4);
      if (is_zero(v)) v[0] = 1;
      g.push_back(v);
    }
    ToricMonoid p = ToricMonoid::from_dual_cone(Cone::from_generators(d, g).dual());
    std::vector<IVec> box;
    for (const auto& x : oracle::simplex_box(d, 8))
      if (oracle::in_cone_lp(g, x)) box.push_back(x);
    std::set<IVec> hb;
    for (const auto& h : hilbert_basis(p)) {
      Integer sum = 0;
      for (const auto& x : h) sum += x;
      if (sum <= 8) hb.insert(h);
    }
    const std::string at = " (instance " + std::to_string(t) + ")";
    c.expect(hb == oracle::irreducibles(box), "Hilbert basis" + at);

    // Ideal membership and supports on the same box.
    std::vector<IVec> nz;
    for (const auto& x : box)
      if (!is_zero(x)) nz.push_back(x);
    if (nz.empty()) continue;
    std::vector<IVec> gens{nz[rng() % nz.size()], nz[rng() % nz.size()]};
    MonoidIdeal ideal = MonoidIdeal::generated(p, gens);
    std::set<IVec> bs(box.begin(), box.end());
    for (const auto& x : box) {
      bool brute = false;
      for (const auto& gg : gens) brute = brute || bs.count(sub(x, gg)) || p.contains(sub(x, gg));
      c.expect(ideal.contains(x) == brute, "membership" + at);
    }
    FaceDecomposition fd = face_decomposition(ideal);
    for (std::size_t k = 0; k < fd.faces.size(); ++k) {
      bool included = true;
      for (const auto& m : box) {
        IVec y = *p.coords(m);
        bool vanish = true;
        for (const auto& r : fd.faces[k].rays())
          if (dot(y, r) != 0) vanish = false;
        bool rad = false;
        for (int s = 1; s <= 16 && !rad; ++s) rad = ideal.contains(scale(Integer(s), m));
        if (vanish && rad) included = false;
      }
      c.expect(fd.included[k] == included, "face decomposition" + at);
    }
  }
}

void c11(Check& c) {
  FanFile fan = read_fan_file(kDir + "/toy_degeneration.json");
  const ConeComplex& cx = fan.complex;
  PuncturedType tau = read_type_file(kDir + "/toy_tau.json", cx);
  for (std::optional<std::size_t> codim : {std::optional<std::size_t>(1), std::optional<std::size_t>()}) {
    DegenerationBounds bounds;
    bounds.codim = codim;
    DegenerationReport rep = enumerate_degenerations(tau, cx, fan.degeneration, bounds);
    auto brute = oracle::brute_force(tau, cx, *fan.degeneration, bounds);
    const std::string at = codim ? " (codim 1)" : " (all codims)";
    c.expect(!rep.exhausted, "not exhausted" + at);
    c.expect(rep.entries.size() == brute.size(), "class count" + at);
    for (const auto& f : brute) {
      bool hit = false;
      for (const auto& e : rep.entries)
        if (oracle::count_isos(f.type, e.type) && e.m == f.m && e.aut == f.aut && e.codim == f.codim) hit = true;
      c.expect(hit, "brute-force class found with equal m, |Aut|, codim" + at);
    }
    if (codim) c.expect(rep.entries.size() == 1 && rep.entries[0].m == 2, "toy multiplicity 2");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    void (*run)(Check&);
    double limit;  // seconds, 0 for none
  };
  const Criterion all[] = {
      {1, "E1 pipeline: basic monoid, puncturing ideal, faces, strata", c1, 1},
      {2, "puncturing ideal of AA^2 with (a,b)=(2,3)", c2, 0},
      {3, "Mobius stalk ideals, lengths and reduced support, e=1..3", c3, 0},
      {4, "Mobius monodromy and 2l contact pieces, l=2,3", c4, 1},
      {5, "contact order, extension order and total degree identity", c5, 0},
      {6, "realizability and dimensions of tau, tau1, tau2", c6, 0},
      {7, "realizable marking ideals on E1 and 25 random contractions", c7, 0},
      {8, "split/glue round trip on 100 random types", c8, 30},
      {9, "node monoids on 200 random instances", c9, 0},
      {10, "Hilbert bases, membership and face decompositions vs brute force", c10, 60},
      {11, "toy degeneration enumeration vs exhaustive search", c11, 0},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit > 0 && secs >= cr.limit) c.expect(false, "over the time limit");
    bool ok = c.failure.empty();
    if (!ok) ++failed;
    std::printf("criterion %2d: %s  %s  (%.2fs)%s%s\n", cr.id, ok ? "PASS" : "FAIL", cr.what, secs,
                ok ? "" : ": ", c.failure.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(std::size(all)) - failed, std::size(all));
  return failed == 0 ? 0 : 1;
}
