#include "puncta/degenerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace puncta {

Integer multiplicity(const PuncturedType& t, const DegenerationMap& p, const ConeComplex& cx) {
  BasicCone b = basic_cone(t, cx);
  if (t.vertices.empty()) throw Error("constant map");
  IVec f(b.rank());
  IMat m = b.vertex_map(0);
  const IVec& pv = p.functional.at(t.vertices[0].sigma);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f[j] += pv[i] * m(i, j);
  bool constant = true;
  for (const auto& r : b.cone.rays())
    if (dot(f, r) != 0) constant = false;
  for (const auto& r : b.cone.lineality())
    if (dot(f, r) != 0) constant = false;
  if (constant) throw Error("constant map");
  return abs(gcd_of(f));
}

namespace {

std::string str(const IVec& v) { return to_string(v); }

std::string arrow_str(std::size_t a) { return a == kUnresolved ? "-" : std::to_string(a); }

std::string cone_str(const std::optional<std::size_t>& c) { return c ? std::to_string(*c) : "-"; }

// Tags are extra vertex decorations, such as the image under a contraction.
std::string key_impl(const PuncturedType& t, const std::vector<std::size_t>& tags) {
  const std::size_t n = t.vertices.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<const TypeLeg*> legs;
  for (const auto& l : t.legs) legs.push_back(&l);
  std::sort(legs.begin(), legs.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::optional<std::string> best;
  do {
    // perm[v] is the new position of vertex v.
    std::vector<std::string> vs(n);
    for (std::size_t v = 0; v < n; ++v) {
      const TypeVertex& x = t.vertices[v];
      vs[perm[v]] = x.genus.str() + "/" + std::to_string(x.sigma) + "/" + str(x.degrees);
      if (!tags.empty()) vs[perm[v]] += "/" + std::to_string(tags[v]);
    }
    std::vector<std::string> es;
    for (const auto& e : t.edges) {
      std::string tail = "/" + std::to_string(e.sigma) + "/" + cone_str(e.u_cone) + "/" + arrow_str(e.u_arrow);
      std::string fwd = std::to_string(perm[e.src]) + ">" + std::to_string(perm[e.dst]) + "/" + str(e.u) + "/" +
                        arrow_str(e.src_arrow) + "/" + arrow_str(e.dst_arrow) + tail;
      std::string rev = std::to_string(perm[e.dst]) + ">" + std::to_string(perm[e.src]) + "/" + str(neg(e.u)) + "/" +
                        arrow_str(e.dst_arrow) + "/" + arrow_str(e.src_arrow) + tail;
      es.push_back(std::min(fwd, rev));
    }
    std::sort(es.begin(), es.end());
    std::string key = "V";
    for (const auto& s : vs) key += "[" + s + "]";
    key += "E";
    for (const auto& s : es) key += "[" + s + "]";
    key += "L";
    for (const auto* l : legs)
      key += "[" + l->id + "@" + std::to_string(perm[l->vertex]) + "/" + std::to_string(l->sigma) + "/" + str(l->u) +
             "/" + (l->punctured ? "p" : "m") + "/" + arrow_str(l->arrow) + "/" + cone_str(l->u_cone) + "/" +
             arrow_str(l->u_arrow) + "]";
    if (!best || key < *best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best.value_or("V");
}

}  // namespace

std::string canonical_key(const PuncturedType& t) { return key_impl(t, {}); }

namespace {

// All integer vectors with coordinates in [-b, b].
std::vector<IVec> box(std::size_t rank, const Integer& b) {
  std::vector<IVec> out{IVec{}};
  for (std::size_t i = 0; i < rank; ++i) {
    std::vector<IVec> next;
    for (const auto& v : out)
      for (Integer x = -b; x <= b; ++x) {
        IVec w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

struct Budget {
  std::size_t left;
  bool hit = false;
  bool take() {
    if (left == 0) {
      hit = true;
      return false;
    }
    --left;
    return true;
  }
};

// Cones c with a face arrow from every cone in `below`.
std::vector<std::size_t> cones_above(const ConeComplex& cx, const std::vector<std::size_t>& below) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cx.size(); ++c) {
    bool ok = true;
    for (std::size_t b : below)
      if (!first_arrow(cx, b, c)) ok = false;
    if (ok) out.push_back(c);
  }
  return out;
}

}  // namespace

DegenerationReport enumerate_degenerations(const PuncturedType& tau, const ConeComplex& cx,
                                           const std::optional<DegenerationMap>& p, const DegenerationBounds& bounds) {
  DegenerationReport rep;
  rep.bounds = bounds;
  rep.section_bound = bounds.sections.has_value();
  if (p) {
    for (const auto& v : tau.vertices)
      for (const auto& r : cx.cone(v.sigma).cone.rays())
        if (dot(p->functional.at(v.sigma), r) != 0) throw Error("type is not generic");
  }
  bool degrees = false;
  for (const auto& v : tau.vertices)
    if (!v.degrees.empty()) degrees = true;
  if (degrees && !bounds.sections) throw Error("degrees need sections");
  const std::size_t tau_rank = basic_cone(tau, cx).rank();
  const std::size_t nt = tau.vertices.size();
  if (bounds.max_vertices < nt || bounds.max_edges < tau.edges.size()) return rep;

  // Section-derived bound on |⟨s_j, u⟩|.
  std::optional<Integer> sbound;
  if (bounds.sections) {
    const GlobalSections& gs = *bounds.sections;
    Integer d = 0;
    for (std::size_t i = 0; i < tau.legs.size(); ++i) {
      LegFrame f = leg_frame(tau, i, cx);
      for (const auto& x : gs.sections.at(f.cone) * f.u) d += abs(x);
    }
    for (const auto& v : tau.vertices)
      for (const auto& x : v.degrees) d += abs(x);
    sbound = d;
  }
  std::map<std::size_t, std::vector<IVec>> u_cache;
  std::map<std::tuple<std::size_t, std::size_t, IVec>, bool> leg_ok;
  auto allowed_u = [&](std::size_t cone) -> const std::vector<IVec>& {
    auto hit = u_cache.find(cone);
    if (hit != u_cache.end()) return hit->second;
    std::vector<IVec> out;
    for (auto& u : box(cx.rank(cone), bounds.u_bound)) {
      if (p && dot(p->functional.at(cone), u) != 0) continue;
      if (sbound) {
        bool ok = true;
        for (const auto& x : bounds.sections->sections.at(cone) * u)
          if (abs(x) > *sbound) ok = false;
        if (!ok) continue;
      }
      out.push_back(u);
    }
    return u_cache[cone] = std::move(out);
  };

  Budget budget{bounds.budget};
  std::map<std::string, DegenerationEntry> found;

  // Final checks on a fully specified candidate.
  std::set<std::string> seen;
  auto consider = [&](PuncturedType cand, const Contraction& shape) {
    if (!budget.take()) return;
    ++rep.candidates;
    // Isomorphic candidates over the same vertex images behave identically.
    if (!seen.insert(key_impl(cand, shape.vertex_map)).second) return;
    if (degrees) {
      const GlobalSections& gs = *bounds.sections;
      std::size_t r = gs.sections.empty() ? 0 : gs.sections[0].rows();
      for (auto& v : cand.vertices) v.degrees = zeros(r);
      for (const auto& e : cand.edges) {
        IVec s = gs.sections.at(e.sigma) * e.u;
        cand.vertices[e.src].degrees = sub(cand.vertices[e.src].degrees, s);
        cand.vertices[e.dst].degrees = add(cand.vertices[e.dst].degrees, s);
      }
      for (std::size_t i = 0; i < cand.legs.size(); ++i) {
        LegFrame f = leg_frame(cand, i, cx);
        cand.vertices[cand.legs[i].vertex].degrees =
            sub(cand.vertices[cand.legs[i].vertex].degrees, gs.sections.at(f.cone) * f.u);
      }
      std::vector<IVec> sums(nt, zeros(r));
      for (std::size_t v = 0; v < cand.vertices.size(); ++v)
        sums[shape.vertex_map[v]] = add(sums[shape.vertex_map[v]], cand.vertices[v].degrees);
      for (std::size_t w = 0; w < nt; ++w)
        if (sums[w] != tau.vertices[w].degrees) return;
    }
    Contraction c{cand, tau, shape.vertex_map, shape.edge_map, shape.leg_map};
    if (!contraction_check(c, cx).ok) return;
    Realization r = realizable(cand, cx, p);
    if (!r.realizable) return;
    DegenerationEntry e;
    if (p) {
      try {
        e.m = multiplicity(cand, *p, cx);
      } catch (const Error&) {
        return;
      }
    }
    e.codim = r.cone->rank() - tau_rank;
    if (bounds.codim && e.codim != *bounds.codim) return;
    e.key = canonical_key(cand);
    if (found.count(e.key)) return;
    e.aut = automorphisms(cand, &c).size();
    e.type = cand;
    e.contraction = c;
    found.emplace(e.key, std::move(e));
  };

  // Stage 3: cones and contact orders, element by element.
  auto decorate = [&](const PuncturedType& shape_t, const Contraction& shape) {
    PuncturedType cand = shape_t;
    const std::size_t nv = cand.vertices.size(), ne = cand.edges.size(), nl = cand.legs.size();
    std::function<void(std::size_t)> step = [&](std::size_t k) {
      if (budget.hit) return;
      if (k < nv) {
        std::size_t below = tau.vertices[shape.vertex_map[k]].sigma;
        for (std::size_t c : cones_above(cx, {below})) {
          cand.vertices[k].sigma = c;
          step(k + 1);
        }
        return;
      }
      if (k < nv + ne) {
        TypeEdge& e = cand.edges[k - nv];
        std::vector<std::size_t> below{cand.vertices[e.src].sigma, cand.vertices[e.dst].sigma};
        const auto& img = shape.edge_map[k - nv];
        if (img) below.push_back(tau.edges[*img].sigma);
        for (std::size_t c : cones_above(cx, below)) {
          e.sigma = c;
          e.src_arrow = *first_arrow(cx, cand.vertices[e.src].sigma, c);
          e.dst_arrow = *first_arrow(cx, cand.vertices[e.dst].sigma, c);
          for (const auto& u : allowed_u(c)) {
            e.u = u;
            if (img) {
              const TypeEdge& f = tau.edges[*img];
              int sign = shape.vertex_map[e.src] == f.src ? 1 : -1;
              if (!edge_compatible(cx, f, e, sign)) continue;
            }
            step(k + 1);
          }
        }
        return;
      }
      if (k < nv + ne + nl) {
        TypeLeg& l = cand.legs[k - nv - ne];
        const TypeLeg& target = tau.legs[shape.leg_map[k - nv - ne]];
        for (std::size_t c : cones_above(cx, {cand.vertices[l.vertex].sigma, target.sigma})) {
          l.sigma = c;
          l.arrow = *first_arrow(cx, cand.vertices[l.vertex].sigma, c);
          for (const auto& u : allowed_u(c)) {
            l.u = u;
            auto key = std::make_tuple(shape.leg_map[k - nv - ne], c, u);
            auto it = leg_ok.find(key);
            if (it == leg_ok.end()) it = leg_ok.emplace(key, leg_compatible(cx, target, l)).first;
            if (!it->second) continue;
            step(k + 1);
          }
        }
        return;
      }
      consider(cand, shape);
    };
    step(0);
  };

  // Stage 1 and 2: preimage sizes, contracted edges, genus split, endpoints and leg positions.
  std::vector<std::size_t> counts(nt, 1);
  std::function<void(std::size_t, std::size_t)> sizes = [&](std::size_t w, std::size_t total) {
    if (budget.hit) return;
    if (w < nt) {
      for (std::size_t c = 1; total + c <= bounds.max_vertices; ++c) {
        counts[w] = c;
        sizes(w + 1, total + c);
      }
      return;
    }
    std::vector<std::size_t> vmap, first(nt);
    for (std::size_t x = 0; x < nt; ++x) {
      first[x] = vmap.size();
      for (std::size_t i = 0; i < counts[x]; ++i) vmap.push_back(x);
    }
    const std::size_t nv = vmap.size();
    const std::size_t spare = bounds.max_edges - tau.edges.size();
    // Candidate contracted edges: pairs i ≤ j in the same group.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i; j < nv; ++j)
        if (vmap[i] == vmap[j]) pairs.push_back({i, j});
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> contracted = [&](std::size_t from) {
      if (budget.hit) return;
      // Each group must be connected with nonnegative remaining genus.
      PuncturedType shape_t;
      bool ok = true;
      std::vector<Integer> spare_genus(nt);
      for (std::size_t x = 0; x < nt && ok; ++x) {
        std::vector<std::size_t> parent(counts[x]);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> root = [&](std::size_t a) {
          return parent[a] == a ? a : parent[a] = root(parent[a]);
        };
        std::size_t comps = counts[x], ex = 0;
        for (std::size_t k : chosen)
          if (vmap[pairs[k].first] == x) {
            ++ex;
            std::size_t a = root(pairs[k].first - first[x]), b = root(pairs[k].second - first[x]);
            if (a != b) {
              parent[a] = b;
              --comps;
            }
          }
        if (comps != 1) ok = false;
        spare_genus[x] = tau.vertices[x].genus - Integer(ex + 1) + Integer(counts[x]);
        if (spare_genus[x] < 0) ok = false;
      }
      if (ok) {
        // Genus split, then endpoints of the surviving edges, then legs.
        std::vector<Integer> genus(nv, 0);
        std::function<void(std::size_t)> split = [&](std::size_t x) {
          if (budget.hit) return;
          if (x == nt) {
            Contraction shape;
            shape.vertex_map = vmap;
            PuncturedType base;
            for (std::size_t v = 0; v < nv; ++v) {
              TypeVertex tv;
              tv.id = "v" + std::to_string(v + 1);
              tv.genus = genus[v];
              base.vertices.push_back(tv);
            }
            for (std::size_t k = 0; k < chosen.size(); ++k) {
              TypeEdge e;
              e.id = "c" + std::to_string(k + 1);
              e.src = pairs[chosen[k]].first;
              e.dst = pairs[chosen[k]].second;
              base.edges.push_back(e);
              shape.edge_map.push_back(std::nullopt);
            }
            std::function<void(std::size_t, PuncturedType&, Contraction&)> ends = [&](std::size_t k, PuncturedType& bt,
                                                                                   Contraction& sh) {
              if (budget.hit) return;
              if (k < tau.edges.size()) {
                const TypeEdge& f = tau.edges[k];
                for (std::size_t a = first[f.src]; a < first[f.src] + counts[f.src]; ++a)
                  for (std::size_t b = first[f.dst]; b < first[f.dst] + counts[f.dst]; ++b) {
                    TypeEdge e;
                    e.id = f.id;
                    e.src = a;
                    e.dst = b;
                    bt.edges.push_back(e);
                    sh.edge_map.push_back(k);
                    ends(k + 1, bt, sh);
                    bt.edges.pop_back();
                    sh.edge_map.pop_back();
                  }
                return;
              }
              std::size_t li = k - tau.edges.size();
              if (li < tau.legs.size()) {
                const TypeLeg& l = tau.legs[li];
                for (std::size_t a = first[l.vertex]; a < first[l.vertex] + counts[l.vertex]; ++a) {
                  TypeLeg m;
                  m.id = l.id;
                  m.vertex = a;
                  m.punctured = l.punctured;
                  bt.legs.push_back(m);
                  sh.leg_map.push_back(li);
                  ends(k + 1, bt, sh);
                  bt.legs.pop_back();
                  sh.leg_map.pop_back();
                }
                return;
              }
              if (!bt.connected()) return;
              decorate(bt, sh);
            };
            ends(0, base, shape);
            return;
          }
          // Compositions of spare_genus[x] over the group.
          std::function<void(std::size_t, Integer)> put = [&](std::size_t i, Integer left) {
            if (i + 1 == counts[x]) {
              genus[first[x] + i] = left;
              split(x + 1);
              return;
            }
            for (Integer g = 0; g <= left; ++g) {
              genus[first[x] + i] = g;
              put(i + 1, left - g);
            }
          };
          put(0, spare_genus[x]);
        };
        split(0);
      }
      if (chosen.size() == spare) return;
      for (std::size_t k = from; k < pairs.size(); ++k) {
        chosen.push_back(k);
        contracted(k);
        chosen.pop_back();
      }
    };
    contracted(0);
  };
  sizes(0, 0);

  rep.exhausted = budget.hit;
  for (auto& [k, e] : found) rep.entries.push_back(std::move(e));
  return rep;
}

}  // namespace puncta
