#include "puncta/types.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace puncta {

bool PuncturedType::is_global() const {
  for (const auto& e : edges)
    if (e.u_cone) return true;
  for (const auto& l : legs)
    if (l.u_cone) return true;
  return false;
}

std::size_t PuncturedType::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  throw Error("unknown vertex " + id);
}

std::size_t PuncturedType::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return i;
  throw Error("unknown edge " + id);
}

std::size_t PuncturedType::leg_index(const std::string& id) const {
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (legs[i].id == id) return i;
  throw Error("unknown leg " + id);
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::size_t count_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::size_t comps = n;
  for (auto [a, b] : edges) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

}  // namespace

Integer PuncturedType::total_genus() const {
  Integer g = 0;
  for (const auto& v : vertices) g += v.genus;
  return g + Integer(first_betti());
}

std::size_t PuncturedType::first_betti() const {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : edges) es.push_back({e.src, e.dst});
  return edges.size() + count_components(vertices.size(), es) - vertices.size();
}

bool PuncturedType::connected() const {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : edges) es.push_back({e.src, e.dst});
  return count_components(vertices.size(), es) <= 1;
}

std::optional<std::size_t> first_arrow(const ConeComplex& cx, std::size_t src, std::size_t dst) {
  if (src == dst) return cx.identity(src);
  auto a = cx.arrows_between(src, dst);
  if (a.empty()) return std::nullopt;
  return a[0];
}

void resolve_arrows(PuncturedType& t, const ConeComplex& cx) {
  auto need = [&](std::size_t src, std::size_t dst, const std::string& what) {
    auto a = first_arrow(cx, src, dst);
    if (!a) throw Error(what + ": " + cx.cone(src).id + " is not a face of " + cx.cone(dst).id);
    return *a;
  };
  for (auto& e : t.edges) {
    if (e.src >= t.vertices.size() || e.dst >= t.vertices.size()) throw Error("edge " + e.id + ": bad endpoint");
    if (e.src_arrow == kUnresolved) e.src_arrow = need(t.vertices[e.src].sigma, e.sigma, "edge " + e.id);
    if (e.dst_arrow == kUnresolved) e.dst_arrow = need(t.vertices[e.dst].sigma, e.sigma, "edge " + e.id);
    if (e.u_cone && e.u_arrow == kUnresolved) e.u_arrow = need(e.sigma, *e.u_cone, "edge " + e.id);
  }
  for (auto& l : t.legs) {
    if (l.vertex >= t.vertices.size()) throw Error("leg " + l.id + ": bad vertex");
    if (l.arrow == kUnresolved) l.arrow = need(t.vertices[l.vertex].sigma, l.sigma, "leg " + l.id);
    if (l.u_cone && l.u_arrow == kUnresolved) l.u_arrow = need(l.sigma, *l.u_cone, "leg " + l.id);
  }
}

void validate_type(const PuncturedType& t, const ConeComplex& cx) {
  auto check_arrow = [&](std::size_t a, std::size_t src, std::size_t dst, const std::string& what) {
    if (a >= cx.arrows().size() || cx.arrows()[a].src != src || cx.arrows()[a].dst != dst)
      throw Error(what + ": no face arrow " + cx.cone(src).id + " -> " + cx.cone(dst).id);
  };
  std::set<std::string> ids;
  for (const auto& v : t.vertices) {
    if (v.sigma >= cx.size()) throw Error("vertex " + v.id + ": unknown cone");
    if (v.genus < 0) throw Error("vertex " + v.id + ": negative genus");
    if (!ids.insert("v:" + v.id).second) throw Error("duplicate vertex id " + v.id);
  }
  for (const auto& e : t.edges) {
    if (e.sigma >= cx.size()) throw Error("edge " + e.id + ": unknown cone");
    if (!ids.insert("e:" + e.id).second) throw Error("duplicate edge id " + e.id);
    check_arrow(e.src_arrow, t.vertices.at(e.src).sigma, e.sigma, "edge " + e.id);
    check_arrow(e.dst_arrow, t.vertices.at(e.dst).sigma, e.sigma, "edge " + e.id);
    std::size_t uc = e.sigma;
    if (e.u_cone) {
      check_arrow(e.u_arrow, e.sigma, *e.u_cone, "edge " + e.id);
      uc = *e.u_cone;
    }
    if (e.u.size() != cx.rank(uc)) throw Error("edge " + e.id + ": contact order has wrong rank");
  }
  for (const auto& l : t.legs) {
    if (l.sigma >= cx.size()) throw Error("leg " + l.id + ": unknown cone");
    if (!ids.insert("l:" + l.id).second) throw Error("duplicate leg id " + l.id);
    check_arrow(l.arrow, t.vertices.at(l.vertex).sigma, l.sigma, "leg " + l.id);
    std::size_t uc = l.sigma;
    if (l.u_cone) {
      check_arrow(l.u_arrow, l.sigma, *l.u_cone, "leg " + l.id);
      uc = *l.u_cone;
    }
    if (l.u.size() != cx.rank(uc)) throw Error("leg " + l.id + ": contact order has wrong rank");
  }
  if (!t.allow_disconnected && !t.vertices.empty() && !t.connected()) throw Error("type graph is disconnected");
  if (t.vertices.empty()) throw Error("type has no vertices");
}

std::vector<PuncturedType> split_type(const PuncturedType& t, const std::vector<std::string>& edges,
                                      const ConeComplex& cx) {
  std::set<std::size_t> cut;
  for (const auto& id : edges) cut.insert(t.edge_index(id));
  const std::size_t n = t.vertices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t k = 0; k < t.edges.size(); ++k)
    if (!cut.count(k)) {
      std::size_t a = find_root(parent, t.edges[k].src), b = find_root(parent, t.edges[k].dst);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (find_root(parent, v) == v) roots.push_back(v);
  std::vector<PuncturedType> out;
  for (std::size_t root : roots) {
    PuncturedType part;
    std::vector<std::size_t> local(n, kUnresolved);
    for (std::size_t v = 0; v < n; ++v)
      if (find_root(parent, v) == root) {
        local[v] = part.vertices.size();
        part.vertices.push_back(t.vertices[v]);
      }
    for (std::size_t k = 0; k < t.edges.size(); ++k)
      if (!cut.count(k) && local[t.edges[k].src] != kUnresolved) {
        TypeEdge e = t.edges[k];
        e.src = local[e.src];
        e.dst = local[e.dst];
        part.edges.push_back(e);
      }
    for (const auto& l : t.legs)
      if (local[l.vertex] != kUnresolved) {
        TypeLeg m = l;
        m.vertex = local[l.vertex];
        part.legs.push_back(m);
      }
    for (std::size_t k : cut) {
      const TypeEdge& e = t.edges[k];
      for (bool src_side : {true, false}) {
        std::size_t v = src_side ? e.src : e.dst;
        if (local[v] == kUnresolved) continue;
        TypeLeg l;
        l.id = e.id + (src_side ? ".src" : ".dst");
        l.vertex = local[v];
        l.sigma = e.sigma;
        l.u = src_side ? e.u : neg(e.u);
        l.arrow = src_side ? e.src_arrow : e.dst_arrow;
        l.u_cone = e.u_cone;
        l.u_arrow = e.u_arrow;
        const Cone& c = e.u_cone ? cx.cone(*e.u_cone).cone : cx.cone(e.sigma).cone;
        l.punctured = !c.contains(l.u);
        l.origin = LegOrigin{e.id, src_side};
        part.legs.push_back(l);
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

namespace {

// Whether the contact datum (arrow from σ_s, u_s), seen from σ_t through some arrow
// σ_t -> σ_s, lies in the class of the target datum (arrow from σ_t, u_t).
bool class_contains(const ConeComplex& cx, std::size_t sigma_t, std::size_t arrow_t, const IVec& u_t,
                    std::size_t sigma_s, std::size_t arrow_s, const IVec& u_s) {
  const auto& ar = cx.arrows();
  Star st = star_of(cx, sigma_t);
  auto obj = [&](std::size_t dst, const IMat& m) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < st.objects.size(); ++i)
      if (ar[st.objects[i]].dst == dst && ar[st.objects[i]].matrix == m) return i;
    return std::nullopt;
  };
  auto seed = obj(ar[arrow_t].dst, ar[arrow_t].matrix);
  if (!seed) return false;
  ContactClass cls = contact_orbit(cx, sigma_t, OrbitNode{*seed, u_t});
  std::set<OrbitNode> orbit(cls.orbit.begin(), cls.orbit.end());
  for (std::size_t a : cx.arrows_between(sigma_t, sigma_s)) {
    IMat m = ar[arrow_s].matrix * ar[a].matrix;
    auto j = obj(ar[arrow_s].dst, m);
    if (j && orbit.count({*j, u_s})) return true;
  }
  return false;
}

struct Datum {
  std::size_t sigma, arrow;
  IVec u;
};

Datum edge_datum(const ConeComplex& cx, const TypeEdge& e) {
  return {e.sigma, e.u_cone ? e.u_arrow : cx.identity(e.sigma), e.u};
}

Datum leg_datum(const ConeComplex& cx, const TypeLeg& l) {
  return {l.sigma, l.u_cone ? l.u_arrow : cx.identity(l.sigma), l.u};
}

// u-compatibility of a source element x with its image φ(x).
bool contact_compatible(const ConeComplex& cx, const Datum& t, const Datum& s, int sign) {
  IVec us = sign > 0 ? s.u : neg(s.u);
  const auto& ar = cx.arrows();
  bool t_plain = ar[t.arrow].src == ar[t.arrow].dst && ar[t.arrow].matrix == IMat::identity(cx.rank(t.sigma));
  bool s_plain = ar[s.arrow].src == ar[s.arrow].dst && ar[s.arrow].matrix == IMat::identity(cx.rank(s.sigma));
  if (t_plain && s_plain) {
    for (std::size_t a : cx.arrows_between(t.sigma, s.sigma))
      if (ar[a].matrix * t.u == us) return true;
    return false;
  }
  return class_contains(cx, t.sigma, t.arrow, t.u, s.sigma, s.arrow, us);
}

}  // namespace

bool leg_compatible(const ConeComplex& cx, const TypeLeg& target, const TypeLeg& source) {
  return contact_compatible(cx, leg_datum(cx, target), leg_datum(cx, source), 1);
}

bool edge_compatible(const ConeComplex& cx, const TypeEdge& target, const TypeEdge& source, int sign) {
  return contact_compatible(cx, edge_datum(cx, target), edge_datum(cx, source), sign);
}

CheckResult contraction_check(const Contraction& c, const ConeComplex& cx) {
  const PuncturedType& s = c.source;
  const PuncturedType& t = c.target;
  auto fail = [](std::string m) { return CheckResult{false, std::move(m)}; };
  if (c.vertex_map.size() != s.vertices.size() || c.edge_map.size() != s.edges.size() ||
      c.leg_map.size() != s.legs.size())
    return fail("maps are not total");
  // Legs: a bijection, never contracted.
  if (s.legs.size() != t.legs.size()) return fail("legs never get contracted: leg counts differ");
  std::vector<bool> hit(t.legs.size(), false);
  for (std::size_t k = 0; k < s.legs.size(); ++k) {
    std::size_t m = c.leg_map[k];
    if (m >= t.legs.size() || hit[m]) return fail("leg map is not a bijection at " + s.legs[k].id);
    hit[m] = true;
  }
  std::vector<bool> vhit(t.vertices.size(), false);
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (c.vertex_map[v] >= t.vertices.size()) return fail("vertex map out of range at " + s.vertices[v].id);
    vhit[c.vertex_map[v]] = true;
  }
  for (std::size_t w = 0; w < t.vertices.size(); ++w)
    if (!vhit[w]) return fail("vertex map not surjective onto " + t.vertices[w].id);
  std::vector<bool> ehit(t.edges.size(), false);
  std::vector<int> sign(s.edges.size(), 1);
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    const TypeEdge& e = s.edges[k];
    std::size_t a = c.vertex_map[e.src], b = c.vertex_map[e.dst];
    if (!c.edge_map[k]) {
      if (a != b) return fail("contracted edge " + e.id + " has endpoints in different vertices");
      continue;
    }
    std::size_t m = *c.edge_map[k];
    if (m >= t.edges.size() || ehit[m]) return fail("edge map is not a bijection at " + e.id);
    ehit[m] = true;
    const TypeEdge& f = t.edges[m];
    if (a == f.src && b == f.dst)
      sign[k] = 1;
    else if (a == f.dst && b == f.src)
      sign[k] = -1;
    else
      return fail("edge " + e.id + " does not map onto the endpoints of " + f.id);
  }
  for (std::size_t m = 0; m < t.edges.size(); ++m)
    if (!ehit[m]) return fail("target edge " + t.edges[m].id + " has no preimage");
  // Genus additivity and connectedness of the contracted subgraphs.
  for (std::size_t w = 0; w < t.vertices.size(); ++w) {
    std::vector<std::size_t> vs;
    std::vector<std::size_t> local(s.vertices.size(), kUnresolved);
    Integer g = 0;
    for (std::size_t v = 0; v < s.vertices.size(); ++v)
      if (c.vertex_map[v] == w) {
        local[v] = vs.size();
        vs.push_back(v);
        g += s.vertices[v].genus;
      }
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t k = 0; k < s.edges.size(); ++k)
      if (!c.edge_map[k] && c.vertex_map[s.edges[k].src] == w)
        es.push_back({local[s.edges[k].src], local[s.edges[k].dst]});
    if (count_components(vs.size(), es) != 1)
      return fail("preimage of " + t.vertices[w].id + " is not connected");
    g += Integer(es.size()) - Integer(vs.size()) + 1;
    if (g != t.vertices[w].genus) return fail("genus not additive at " + t.vertices[w].id);
  }
  // Cone compatibility: σ_target(φ(x)) is a face of σ_source(x).
  auto face = [&](std::size_t st, std::size_t ss) { return !cx.arrows_between(st, ss).empty(); };
  for (std::size_t v = 0; v < s.vertices.size(); ++v)
    if (!face(t.vertices[c.vertex_map[v]].sigma, s.vertices[v].sigma))
      return fail("cone of " + s.vertices[v].id + " does not contain the cone of its image");
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    const TypeEdge& e = s.edges[k];
    std::size_t st = c.edge_map[k] ? t.edges[*c.edge_map[k]].sigma : t.vertices[c.vertex_map[e.src]].sigma;
    if (!face(st, e.sigma)) return fail("cone of " + e.id + " does not contain the cone of its image");
    if (c.edge_map[k] && !contact_compatible(cx, edge_datum(cx, t.edges[*c.edge_map[k]]), edge_datum(cx, e), sign[k]))
      return fail("contact order of " + e.id + " is not compatible");
  }
  for (std::size_t k = 0; k < s.legs.size(); ++k) {
    const TypeLeg& l = s.legs[k];
    const TypeLeg& m = t.legs[c.leg_map[k]];
    if (c.vertex_map[l.vertex] != m.vertex) return fail("leg " + l.id + " moves to another vertex");
    if (l.punctured != m.punctured) return fail("leg " + l.id + " changes its puncturing flag");
    if (!face(m.sigma, l.sigma)) return fail("cone of " + l.id + " does not contain the cone of its image");
    if (!contact_compatible(cx, leg_datum(cx, m), leg_datum(cx, l), 1))
      return fail("contact order of " + l.id + " is not compatible");
  }
  return {};
}

std::optional<Contraction> find_contraction(const PuncturedType& source, const PuncturedType& target,
                                            const ConeComplex& cx, std::size_t budget) {
  Contraction c{source, target, std::vector<std::size_t>(source.vertices.size(), 0),
                std::vector<std::optional<std::size_t>>(source.edges.size()),
                std::vector<std::size_t>(source.legs.size(), 0)};
  if (source.legs.size() != target.legs.size()) return std::nullopt;
  for (std::size_t k = 0; k < source.legs.size(); ++k) {
    auto it = std::find_if(target.legs.begin(), target.legs.end(),
                           [&](const TypeLeg& l) { return l.id == source.legs[k].id; });
    if (it == target.legs.end()) return std::nullopt;
    c.leg_map[k] = std::size_t(it - target.legs.begin());
  }
  std::size_t steps = 0;
  std::optional<Contraction> found;
  std::vector<bool> used(target.edges.size(), false);
  std::function<void(std::size_t)> edges = [&](std::size_t k) {
    if (found) return;
    if (++steps > budget) throw BudgetExceeded("budget exceeded");
    if (k == source.edges.size()) {
      if (contraction_check(c, cx).ok) found = c;
      return;
    }
    const TypeEdge& e = source.edges[k];
    std::size_t a = c.vertex_map[e.src], b = c.vertex_map[e.dst];
    for (std::size_t m = 0; m < target.edges.size(); ++m) {
      const TypeEdge& f = target.edges[m];
      if (used[m] || !((f.src == a && f.dst == b) || (f.src == b && f.dst == a))) continue;
      used[m] = true;
      c.edge_map[k] = m;
      edges(k + 1);
      used[m] = false;
      if (found) return;
    }
    if (a == b) {
      c.edge_map[k] = std::nullopt;
      edges(k + 1);
    }
  };
  std::function<void(std::size_t)> verts = [&](std::size_t v) {
    if (found) return;
    if (++steps > budget) throw BudgetExceeded("budget exceeded");
    if (v == source.vertices.size()) {
      edges(0);
      return;
    }
    for (std::size_t w = 0; w < target.vertices.size(); ++w) {
      if (cx.arrows_between(target.vertices[w].sigma, source.vertices[v].sigma).empty()) continue;
      bool legs_ok = true;
      for (std::size_t k = 0; k < source.legs.size(); ++k)
        if (source.legs[k].vertex == v && target.legs[c.leg_map[k]].vertex != w) legs_ok = false;
      if (!legs_ok) continue;
      c.vertex_map[v] = w;
      verts(v + 1);
      if (found) return;
    }
  };
  verts(0);
  return found;
}

Contraction compose(const Contraction& outer, const Contraction& inner) {
  Contraction c{inner.source, outer.target, {}, {}, {}};
  for (std::size_t v : inner.vertex_map) c.vertex_map.push_back(outer.vertex_map.at(v));
  for (const auto& e : inner.edge_map) c.edge_map.push_back(e ? outer.edge_map.at(*e) : std::nullopt);
  for (std::size_t l : inner.leg_map) c.leg_map.push_back(outer.leg_map.at(l));
  return c;
}

Contraction identity_contraction(const PuncturedType& t) {
  Contraction c{t, t, {}, {}, {}};
  for (std::size_t v = 0; v < t.vertices.size(); ++v) c.vertex_map.push_back(v);
  for (std::size_t e = 0; e < t.edges.size(); ++e) c.edge_map.push_back(e);
  for (std::size_t l = 0; l < t.legs.size(); ++l) c.leg_map.push_back(l);
  return c;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism c;
  for (std::size_t v : b.vertices) c.vertices.push_back(a.vertices[v]);
  for (std::size_t k = 0; k < b.edges.size(); ++k) {
    c.edges.push_back(a.edges[b.edges[k]]);
    c.flips.push_back(b.flips[k] != a.flips[b.edges[k]]);
  }
  for (std::size_t l : b.legs) c.legs.push_back(a.legs[l]);
  return c;
}

Automorphism inverse(const Automorphism& a) {
  Automorphism c;
  c.vertices.resize(a.vertices.size());
  c.edges.resize(a.edges.size());
  c.flips.resize(a.edges.size());
  c.legs.resize(a.legs.size());
  for (std::size_t v = 0; v < a.vertices.size(); ++v) c.vertices[a.vertices[v]] = v;
  for (std::size_t k = 0; k < a.edges.size(); ++k) {
    c.edges[a.edges[k]] = k;
    c.flips[a.edges[k]] = a.flips[k];
  }
  for (std::size_t l = 0; l < a.legs.size(); ++l) c.legs[a.legs[l]] = l;
  return c;
}

std::vector<Automorphism> automorphisms(const PuncturedType& t, const Contraction* rel, bool fix_legs,
                                        std::size_t budget) {
  const std::size_t nv = t.vertices.size(), ne = t.edges.size(), nl = t.legs.size();
  std::vector<std::size_t> valence(nv, 0);
  for (const auto& e : t.edges) {
    ++valence[e.src];
    ++valence[e.dst];
  }
  for (const auto& l : t.legs) ++valence[l.vertex];
  // Orientation of each edge relative to its image under rel (+1, -1, or 0 when contracted).
  std::vector<int> rel_sign(ne, 0);
  if (rel)
    for (std::size_t k = 0; k < ne; ++k)
      if (rel->edge_map[k]) rel_sign[k] = rel->vertex_map[t.edges[k].src] == rel->target.edges[*rel->edge_map[k]].src ? 1 : -1;

  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > budget) throw BudgetExceeded("budget exceeded");
  };
  std::vector<Automorphism> out;
  Automorphism cur;
  cur.vertices.assign(nv, 0);
  cur.edges.assign(ne, 0);
  cur.flips.assign(ne, false);
  cur.legs.assign(nl, 0);
  std::vector<bool> vused(nv), eused(ne), lused(nl);

  std::function<void(std::size_t)> legs = [&](std::size_t k) {
    tick();
    if (k == nl) {
      out.push_back(cur);
      return;
    }
    const TypeLeg& l = t.legs[k];
    for (std::size_t m = 0; m < nl; ++m) {
      if (lused[m]) continue;
      if (fix_legs && m != k) continue;
      const TypeLeg& o = t.legs[m];
      if (o.vertex != cur.vertices[l.vertex] || o.sigma != l.sigma || o.u != l.u || o.punctured != l.punctured ||
          o.arrow != l.arrow || o.u_cone != l.u_cone || o.u_arrow != l.u_arrow)
        continue;
      if (rel && rel->leg_map[m] != rel->leg_map[k]) continue;
      lused[m] = true;
      cur.legs[k] = m;
      legs(k + 1);
      lused[m] = false;
    }
  };
  std::function<void(std::size_t)> edges = [&](std::size_t k) {
    tick();
    if (k == ne) {
      legs(0);
      return;
    }
    const TypeEdge& e = t.edges[k];
    for (std::size_t m = 0; m < ne; ++m) {
      if (eused[m]) continue;
      const TypeEdge& f = t.edges[m];
      if (f.sigma != e.sigma || f.u_cone != e.u_cone || f.u_arrow != e.u_arrow) continue;
      if (rel && rel->edge_map[m] != rel->edge_map[k]) continue;
      for (bool flip : {false, true}) {
        std::size_t a = cur.vertices[e.src], b = cur.vertices[e.dst];
        if (!flip) {
          if (a != f.src || b != f.dst || f.u != e.u || f.src_arrow != e.src_arrow || f.dst_arrow != e.dst_arrow) continue;
        } else {
          if (a != f.dst || b != f.src || f.u != neg(e.u) || f.src_arrow != e.dst_arrow || f.dst_arrow != e.src_arrow)
            continue;
        }
        if (rel && rel_sign[k] != 0 && (rel_sign[m] * (flip ? -1 : 1)) != rel_sign[k]) continue;
        eused[m] = true;
        cur.edges[k] = m;
        cur.flips[k] = flip;
        edges(k + 1);
        eused[m] = false;
      }
    }
  };
  std::function<void(std::size_t)> verts = [&](std::size_t v) {
    tick();
    if (v == nv) {
      edges(0);
      return;
    }
    const TypeVertex& x = t.vertices[v];
    for (std::size_t w = 0; w < nv; ++w) {
      if (vused[w]) continue;
      const TypeVertex& y = t.vertices[w];
      if (y.genus != x.genus || y.sigma != x.sigma || y.degrees != x.degrees || valence[w] != valence[v]) continue;
      if (rel && rel->vertex_map[w] != rel->vertex_map[v]) continue;
      vused[w] = true;
      cur.vertices[v] = w;
      verts(v + 1);
      vused[w] = false;
    }
  };
  verts(0);
  std::sort(out.begin(), out.end());
  return out;
}

PuncturedType class_of(const PuncturedType& t, const ConeComplex& cx) {
  std::optional<std::size_t> apex;
  for (std::size_t i = 0; i < cx.size() && !apex; ++i) {
    if (cx.cone(i).cone.dim() != 0) continue;
    bool ok = true;
    for (const auto& v : t.vertices)
      if (cx.arrows_between(i, v.sigma).empty()) ok = false;
    if (ok) apex = i;
  }
  if (!apex) throw Error("no zero cone below all vertex cones");
  PuncturedType c;
  TypeVertex v;
  v.id = t.vertices.size() == 1 ? t.vertices[0].id : "v";
  v.genus = t.total_genus();
  v.sigma = *apex;
  for (const auto& w : t.vertices) {
    if (v.degrees.empty()) v.degrees = zeros(w.degrees.size());
    if (w.degrees.size() != v.degrees.size()) throw Error("inconsistent degree vectors");
    v.degrees = add(v.degrees, w.degrees);
  }
  c.vertices.push_back(v);
  for (const auto& l : t.legs) {
    TypeLeg m;
    m.id = l.id;
    m.vertex = 0;
    m.sigma = *apex;
    m.u = l.u;
    m.punctured = l.punctured;
    m.arrow = cx.identity(*apex);
    const auto& ar = cx.arrows();
    // Represent the class by the composite arrow apex -> σ(v) -> σ(L) (-> u_cone).
    IMat via = ar[l.arrow].matrix * ar[*first_arrow(cx, *apex, t.vertices[l.vertex].sigma)].matrix;
    std::size_t dst = l.sigma;
    if (l.u_cone) {
      via = ar[l.u_arrow].matrix * via;
      dst = *l.u_cone;
    }
    if (dst == *apex) {
      m.u_cone = std::nullopt;
    } else {
      m.u_cone = dst;
      for (std::size_t a : cx.arrows_between(*apex, dst))
        if (ar[a].matrix == via) m.u_arrow = a;
      if (m.u_arrow == kUnresolved) throw Error("internal: composite arrow missing");
    }
    c.legs.push_back(m);
  }
  return c;
}

bool same_type(const PuncturedType& a, const PuncturedType& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() || a.legs.size() != b.legs.size())
    return false;
  for (const auto& v : a.vertices) {
    auto it = std::find_if(b.vertices.begin(), b.vertices.end(), [&](const TypeVertex& w) { return w.id == v.id; });
    if (it == b.vertices.end() || it->genus != v.genus || it->sigma != v.sigma || it->degrees != v.degrees) return false;
  }
  auto vid = [](const PuncturedType& t, std::size_t i) { return t.vertices[i].id; };
  for (const auto& e : a.edges) {
    auto it = std::find_if(b.edges.begin(), b.edges.end(), [&](const TypeEdge& f) { return f.id == e.id; });
    if (it == b.edges.end() || it->sigma != e.sigma || it->u_cone != e.u_cone) return false;
    bool same = vid(a, e.src) == vid(b, it->src) && vid(a, e.dst) == vid(b, it->dst) && it->u == e.u &&
                it->src_arrow == e.src_arrow && it->dst_arrow == e.dst_arrow;
    bool flipped = vid(a, e.src) == vid(b, it->dst) && vid(a, e.dst) == vid(b, it->src) && it->u == neg(e.u) &&
                   it->src_arrow == e.dst_arrow && it->dst_arrow == e.src_arrow;
    if (!same && !flipped) return false;
  }
  for (const auto& l : a.legs) {
    auto it = std::find_if(b.legs.begin(), b.legs.end(), [&](const TypeLeg& m) { return m.id == l.id; });
    if (it == b.legs.end() || vid(a, l.vertex) != vid(b, it->vertex) || it->sigma != l.sigma || it->u != l.u ||
        it->punctured != l.punctured || it->arrow != l.arrow || it->u_cone != l.u_cone)
      return false;
  }
  return true;
}

}  // namespace puncta
