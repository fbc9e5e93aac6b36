#include "puncta/glue.hpp"

#include <map>
#include <set>
#include <sstream>

namespace puncta {

std::vector<LegMatch> parse_matches(const std::string& s) {
  std::vector<LegMatch> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw Error("invalid match " + item + " (expected leg=leg)");
    out.push_back({item.substr(0, eq), item.substr(eq + 1)});
  }
  return out;
}

std::string glued_edge_id(const TypeLeg& a, const TypeLeg& b) {
  if (a.origin && b.origin && a.origin->edge == b.origin->edge && a.origin->src_side != b.origin->src_side)
    return a.origin->edge;
  return a.id + "~" + b.id;
}

namespace {

struct LegRef {
  std::size_t part, leg;
};

std::map<std::string, LegRef> leg_table(const std::vector<PuncturedType>& parts, std::set<std::string>& ambiguous) {
  std::map<std::string, LegRef> table;
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t k = 0; k < parts[p].legs.size(); ++k)
      if (!table.emplace(parts[p].legs[k].id, LegRef{p, k}).second) ambiguous.insert(parts[p].legs[k].id);
  return table;
}

LegRef lookup(const std::map<std::string, LegRef>& table, const std::set<std::string>& ambiguous,
              const std::string& id) {
  if (ambiguous.count(id)) throw Error("ambiguous leg id " + id);
  auto it = table.find(id);
  if (it == table.end()) throw Error("unknown leg " + id);
  return it->second;
}

}  // namespace

PuncturedType glue_types(const std::vector<PuncturedType>& parts, const std::vector<LegMatch>& matches,
                         const ConeComplex& cx, bool allow_disconnected) {
  PuncturedType g;
  g.allow_disconnected = allow_disconnected;
  std::vector<std::size_t> offset;
  std::set<std::string> vids, eids;
  for (const auto& p : parts) {
    offset.push_back(g.vertices.size());
    for (const auto& v : p.vertices) {
      if (!vids.insert(v.id).second) throw Error("duplicate vertex id " + v.id);
      g.vertices.push_back(v);
    }
    for (auto e : p.edges) {
      if (!eids.insert(e.id).second) throw Error("duplicate edge id " + e.id);
      e.src += offset.back();
      e.dst += offset.back();
      g.edges.push_back(e);
    }
  }
  std::set<std::string> ambiguous;
  auto table = leg_table(parts, ambiguous);
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (const auto& m : matches) {
    LegRef a = lookup(table, ambiguous, m.first), b = lookup(table, ambiguous, m.second);
    if (!used.insert({a.part, a.leg}).second || !used.insert({b.part, b.leg}).second)
      throw Error("mismatch: " + m.first + "/" + m.second + ": leg matched twice");
    const TypeLeg& la = parts[a.part].legs[a.leg];
    const TypeLeg& lb = parts[b.part].legs[b.leg];
    const std::string what = "mismatch: " + m.first + "/" + m.second;
    if (la.sigma != lb.sigma) throw Error(what + ": cones differ");
    if (la.u_cone != lb.u_cone || (la.u_cone && la.u_arrow != lb.u_arrow))
      throw Error(what + ": contact classes live in different cones");
    if (la.u != neg(lb.u)) throw Error(what + ": contact orders are not opposite");
    // Orient from the source side of a split edge, otherwise from the first leg.
    bool flip = la.origin && lb.origin && la.origin->edge == lb.origin->edge && !la.origin->src_side &&
                lb.origin->src_side;
    const TypeLeg& s = flip ? lb : la;
    const TypeLeg& d = flip ? la : lb;
    const LegRef& rs = flip ? b : a;
    const LegRef& rd = flip ? a : b;
    TypeEdge e;
    e.id = glued_edge_id(s, d);
    if (!eids.insert(e.id).second) throw Error("duplicate edge id " + e.id);
    e.src = offset[rs.part] + s.vertex;
    e.dst = offset[rd.part] + d.vertex;
    e.sigma = s.sigma;
    e.u = s.u;
    e.src_arrow = s.arrow;
    e.dst_arrow = d.arrow;
    e.u_cone = s.u_cone;
    e.u_arrow = s.u_arrow;
    g.edges.push_back(e);
  }
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t k = 0; k < parts[p].legs.size(); ++k) {
      if (used.count({p, k})) continue;
      TypeLeg l = parts[p].legs[k];
      l.vertex += offset[p];
      g.legs.push_back(l);
    }
  if (!allow_disconnected && !g.connected()) throw Error("glued type is disconnected");
  validate_type(g, cx);
  return g;
}

namespace {

IVec random_point(const Cone& c, std::mt19937& rng) {
  IVec x = zeros(c.ambient_dim());
  std::uniform_int_distribution<int> d(0, 3);
  for (const auto& r : c.rays()) x = add(x, scale(Integer(d(rng)), r));
  return x;
}

QVec qmul(const IMat& m, const QVec& x) {
  QVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += Rational(m(i, j)) * x[j];
  return y;
}

QVec axpy(const QVec& x, const Rational& a, const IVec& u) {
  QVec y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * Rational(u[i]);
  return y;
}

}  // namespace

GluingCheck check_gluing_compatibility(const std::vector<PuncturedType>& parts, const std::vector<LegMatch>& matches,
                                       const PuncturedType& glued, const ConeComplex& cx, std::size_t samples,
                                       unsigned seed) {
  GluingCheck res;
  auto fail = [&](std::string m) {
    res.ok = false;
    res.message = std::move(m);
    return res;
  };
  BasicCone bg = basic_cone(glued, cx);
  std::vector<BasicCone> bp;
  for (const auto& p : parts) {
    try {
      bp.push_back(basic_cone(p, cx));
    } catch (const Error& e) {
      return fail(std::string("part: ") + e.what());
    }
  }
  std::set<std::string> ambiguous;
  auto table = leg_table(parts, ambiguous);
  struct M {
    LegRef a, b;
    std::size_t edge;
  };
  std::vector<M> ms;
  for (const auto& m : matches) {
    LegRef a = lookup(table, ambiguous, m.first), b = lookup(table, ambiguous, m.second);
    std::string id = glued_edge_id(parts[a.part].legs[a.leg], parts[b.part].legs[b.leg]);
    ms.push_back({a, b, glued.edge_index(id)});
  }

  // Ambient point of part p read off glued vertex positions and edge lengths.
  auto restrict_to = [&](std::size_t p, const std::vector<QVec>& pos, const std::map<std::string, Rational>& len) {
    QVec amb;
    for (const auto& v : parts[p].vertices)
      for (const auto& c : pos[glued.vertex_index(v.id)]) amb.push_back(c);
    for (const auto& e : parts[p].edges) amb.push_back(len.at(e.id));
    return amb;
  };
  auto endpoint = [&](const LegRef& r, const QVec& x, const Rational& lambda) {
    const TypeLeg& l = parts[r.part].legs[r.leg];
    LegFrame f = leg_frame(parts[r.part], r.leg, cx);
    return axpy(qmul(f.from_vertex, vertex_position(bp[r.part], l.vertex, x)), lambda, f.u);
  };

  std::mt19937 rng(seed);
  std::vector<QVec> pts;
  for (const auto& r : bg.cone.rays()) pts.push_back(to_q(r));
  for (std::size_t s = 0; s < samples; ++s) pts.push_back(to_q(random_point(bg.cone, rng)));
  pts.push_back(QVec(bg.rank()));
  for (const auto& y : pts) {
    ++res.points;
    std::vector<QVec> pos;
    for (std::size_t v = 0; v < glued.vertices.size(); ++v) pos.push_back(vertex_position(bg, v, y));
    std::map<std::string, Rational> len;
    for (std::size_t e = 0; e < glued.edges.size(); ++e) len[glued.edges[e].id] = dot(bg.edge_length(e), y);
    std::vector<QVec> xs;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      auto x = bp[p].to_local(restrict_to(p, pos, len));
      if (!x || !bp[p].cone.contains(*x)) return fail("(a) restriction leaves the basic cone of part " + std::to_string(p));
      xs.push_back(*x);
    }
    for (const auto& m : ms) {
      Rational le = len.at(glued.edges[m.edge].id);
      auto la = leg_length(bp[m.a.part], parts[m.a.part], cx, m.a.leg, xs[m.a.part]);
      auto lb = leg_length(bp[m.b.part], parts[m.b.part], cx, m.b.leg, xs[m.b.part]);
      if (la && lb && *la + *lb < le) return fail("(a) legs do not reach each other on " + glued.edges[m.edge].id);
      Rational lam = la ? std::min(*la, le) : le;
      if (endpoint(m.a, xs[m.a.part], lam) != endpoint(m.b, xs[m.b.part], le - lam))
        return fail("(a) endpoints differ on " + glued.edges[m.edge].id);
      // Any other split recombines to the same length.
      Rational mu = le * Rational(std::uniform_int_distribution<int>(0, 4)(rng), 4);
      if (endpoint(m.a, xs[m.a.part], mu) != endpoint(m.b, xs[m.b.part], le - mu))
        return fail("(b) split endpoints differ on " + glued.edges[m.edge].id);
    }
  }
  // Independent points of the parts whose matched legs meet lift to the glued cone.
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<QVec> xs;
    for (const auto& b : bp) xs.push_back(to_q(random_point(b.cone, rng)));
    std::map<std::string, Rational> len;
    bool meets = true;
    for (const auto& m : ms) {
      QVec d = endpoint(m.b, xs[m.b.part], 0);
      QVec a = endpoint(m.a, xs[m.a.part], 0);
      const IVec& u = parts[m.a.part].legs[m.a.leg].u;
      std::optional<Rational> t;
      for (std::size_t i = 0; i < u.size() && meets; ++i) {
        Rational diff = d[i] - a[i];
        if (u[i] == 0) {
          if (diff != 0) meets = false;
        } else if (!t) {
          t = diff / Rational(u[i]);
        } else if (*t * Rational(u[i]) != diff) {
          meets = false;
        }
      }
      if (!t) t = Rational(0);
      if (*t < 0) meets = false;
      len[glued.edges[m.edge].id] = *t;
    }
    if (!meets) continue;
    ++res.points;
    QVec amb(bg.ambient);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (std::size_t v = 0; v < parts[p].vertices.size(); ++v) {
        QVec pv = vertex_position(bp[p], v, xs[p]);
        std::size_t gv = glued.vertex_index(parts[p].vertices[v].id);
        for (std::size_t i = 0; i < pv.size(); ++i) amb[bg.vertex_offset[gv] + i] = pv[i];
      }
      for (std::size_t e = 0; e < parts[p].edges.size(); ++e)
        amb[bg.edge_offset + glued.edge_index(parts[p].edges[e].id)] = dot(bp[p].edge_length(e), xs[p]);
    }
    for (const auto& [id, l] : len) amb[bg.edge_offset + glued.edge_index(id)] = l;
    auto y = bg.to_local(amb);
    if (!y || !bg.cone.contains(*y)) return fail("(b) matching tuple does not lift to the glued cone");
  }
  return res;
}

NodeMonoidData node_monoid(const ToricMonoid& q, const IVec& rho1, const IVec& rho2) {
  if (!q.contains(rho1) || !q.contains(rho2)) throw Error("rho is not an element of Q");
  NodeMonoidData d;
  d.base = q;
  d.rho1 = rho1;
  d.rho2 = rho2;
  d.rho_q = add(rho1, rho2);
  const std::size_t n = q.ambient_rank();
  std::vector<IVec> gens;
  for (const auto& g : q.generators()) gens.push_back(concat(g, zeros(1)));
  IVec x = zeros(n + 1), y = concat(d.rho_q, zeros(1));
  x[n] = 1;
  y[n] = -1;
  gens.push_back(x);
  gens.push_back(y);
  d.q12 = AffineMonoid(n + 1, gens);
  d.saturated = d.q12.is_saturated();
  d.dual = d.q12.real_cone().dual();
  return d;
}

}  // namespace puncta
