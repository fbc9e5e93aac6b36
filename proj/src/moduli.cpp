#include "puncta/moduli.hpp"

#include "puncta/lp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace puncta {

namespace {

QVec mul(const IMat& m, const QVec& x) {
  QVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += Rational(m(i, j)) * x[j];
  return y;
}

IVec mul_t(const IMat& m, const IVec& h) {
  IVec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += m(i, j) * h[i];
  return y;
}

Rational qdot(const IVec& a, const QVec& x) { return dot(a, x); }

std::string coord_label(const PuncturedType& t, std::size_t v, std::size_t i, std::size_t rank) {
  const TypeVertex& x = t.vertices[v];
  if (i < x.coord_labels.size()) return x.coord_labels[i];
  return rank == 1 ? "V_" + x.id : "V_" + x.id + "_" + std::to_string(i + 1);
}

// Columns of basis restricted to the rows in s form a unimodular matrix.
bool unimodular_on(const IMat& basis, const std::vector<std::size_t>& s) {
  IMat m(s.size(), basis.cols());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) m(i, j) = basis(s[i], j);
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

const IMat& arrow_matrix(const ConeComplex& cx, std::size_t a) { return cx.arrows().at(a).matrix; }

}  // namespace

QVec BasicCone::to_ambient(const QVec& x) const { return mul(basis, x); }

std::optional<QVec> BasicCone::to_local(const QVec& a) const {
  std::optional<QVec> x;
  if (!coords.empty() || rank() == 0) {
    QVec y;
    for (std::size_t c : coords) y.push_back(a[c]);
    x = y;
  } else {
    x = solve_rational(to_q(basis), a);
  }
  if (!x || to_ambient(*x) != a) return std::nullopt;
  return x;
}

IVec BasicCone::pull(const IVec& f) const { return mul_t(basis, f); }

IMat BasicCone::vertex_map(std::size_t v) const {
  std::size_t end = v + 1 < vertex_offset.size() ? vertex_offset[v + 1] : edge_offset;
  IMat m(end - vertex_offset[v], rank());
  for (std::size_t i = vertex_offset[v]; i < end; ++i)
    for (std::size_t j = 0; j < rank(); ++j) m(i - vertex_offset[v], j) = basis(i, j);
  return m;
}

IVec BasicCone::edge_length(std::size_t e) const { return basis.row(edge_offset + e); }

std::string BasicCone::format(const IVec& f) const {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Integer c = f[i];
    if (c < 0) {
      s += "-";
      c = -c;
    } else if (!s.empty()) {
      s += "+";
    }
    if (c != 1) s += c.str();
    s += labels[i];
  }
  return s.empty() ? "0" : s;
}

BasicCone basic_cone(const PuncturedType& t, const ConeComplex& cx) {
  BasicCone b;
  std::vector<std::string> amb_labels;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    b.vertex_offset.push_back(b.ambient);
    std::size_t r = cx.rank(t.vertices[v].sigma);
    for (std::size_t i = 0; i < r; ++i) amb_labels.push_back(coord_label(t, v, i, r));
    b.ambient += r;
  }
  b.edge_offset = b.ambient;
  for (const auto& e : t.edges) amb_labels.push_back(e.length_label.empty() ? "l_" + e.id : e.length_label);
  b.ambient += t.edges.size();
  const std::size_t n = b.ambient;

  std::vector<IVec> ineqs, eqs;
  auto embed = [&](IVec& row, std::size_t off, const IVec& f, int sign) {
    for (std::size_t i = 0; i < f.size(); ++i) row[off + i] += sign * f[i];
  };
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    const Cone& s = cx.cone(t.vertices[v].sigma).cone;
    if (!s.pointed()) b.pointed = false;
    for (const auto& f : s.facets()) {
      IVec row = zeros(n);
      embed(row, b.vertex_offset[v], f, 1);
      ineqs.push_back(row);
    }
    for (const auto& f : s.equations()) {
      IVec row = zeros(n);
      embed(row, b.vertex_offset[v], f, 1);
      eqs.push_back(row);
    }
  }
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const TypeEdge& e = t.edges[k];
    ineqs.push_back(unit(n, b.edge_offset + k));
    IMat w = e.u_cone ? arrow_matrix(cx, e.u_arrow) : IMat::identity(cx.rank(e.sigma));
    IMat ad = w * arrow_matrix(cx, e.dst_arrow), as = w * arrow_matrix(cx, e.src_arrow);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      IVec row = zeros(n);
      embed(row, b.vertex_offset[e.dst], ad.row(i), 1);
      embed(row, b.vertex_offset[e.src], as.row(i), -1);
      row[b.edge_offset + k] -= e.u[i];
      eqs.push_back(row);
    }
  }
  Cone amb = Cone::from_inequalities(n, ineqs, eqs);
  std::vector<IVec> span = amb.span_basis();
  const std::size_t k = span.size();
  IMat basis = cols_to_mat(span, n);

  // Prefer edge lengths, then vertex coordinates, in order.
  std::vector<std::size_t> order;
  for (std::size_t i = b.edge_offset; i < n; ++i) order.push_back(i);
  for (std::size_t i = 0; i < b.edge_offset; ++i) order.push_back(i);
  std::vector<std::size_t> pick;
  std::size_t tries = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t from) {
    if (pick.size() == k) {
      std::vector<std::size_t> s = pick;
      std::sort(s.begin(), s.end());
      return unimodular_on(basis, s);
    }
    if (++tries > 20000) return false;
    for (std::size_t i = from; i + (k - pick.size()) <= order.size(); ++i) {
      pick.push_back(order[i]);
      if (search(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (k > 0 && search(0)) {
    b.coords = pick;
    std::sort(b.coords.begin(), b.coords.end());
    IMat sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = basis(b.coords[i], j);
    QMat inv = *inverse(to_q(sub));
    IMat change(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) change(i, j) = numerator(inv(i, j));
    b.basis = basis * change;
    for (std::size_t c : b.coords) b.labels.push_back(amb_labels[c]);
  } else {
    b.basis = k > 0 ? basis : IMat(n, 0);
    for (std::size_t i = 0; i < k; ++i) b.labels.push_back("q" + std::to_string(i + 1));
  }

  auto local = [&](const IVec& a) {
    auto x = b.to_local(to_q(a));
    if (!x) throw Error("internal: point outside the span of the basic cone");
    return *to_z(*x);
  };
  std::vector<IVec> rays, lin;
  for (const auto& r : amb.rays()) rays.push_back(local(r));
  for (const auto& r : amb.lineality()) lin.push_back(local(r));
  b.cone = Cone::from_generators(k, rays, lin);
  b.monoid = ToricMonoid::from_dual_cone(b.cone);

  if (!t.edges.empty()) {
    bool all_zero = true;
    for (std::size_t e = 0; e < t.edges.size() && all_zero; ++e) {
      IVec l = b.edge_length(e);
      for (const auto& r : b.cone.rays())
        if (dot(l, r) != 0) all_zero = false;
      for (const auto& r : b.cone.lineality())
        if (dot(l, r) != 0) all_zero = false;
    }
    if (all_zero) throw Error("empty basic cone");
  }
  return b;
}

LegFrame leg_frame(const PuncturedType& t, std::size_t leg, const ConeComplex& cx) {
  const TypeLeg& l = t.legs.at(leg);
  LegFrame f{l.sigma, arrow_matrix(cx, l.arrow), l.u};
  if (l.u_cone) {
    f.cone = *l.u_cone;
    f.from_vertex = arrow_matrix(cx, l.u_arrow) * f.from_vertex;
  }
  return f;
}

QVec vertex_position(const BasicCone& b, std::size_t v, const QVec& x) { return mul(b.vertex_map(v), x); }

std::optional<Rational> leg_length(const BasicCone& b, const PuncturedType& t, const ConeComplex& cx,
                                   std::size_t leg, const QVec& x) {
  LegFrame f = leg_frame(t, leg, cx);
  const Cone& s = cx.cone(f.cone).cone;
  if (s.contains(f.u)) return std::nullopt;
  for (const auto& e : s.equations())
    if (dot(e, f.u) != 0) return Rational(0);
  QVec v = mul(f.from_vertex, vertex_position(b, t.legs[leg].vertex, x));
  std::optional<Rational> best;
  for (const auto& n : s.facets()) {
    Integer nu = dot(n, f.u);
    if (nu >= 0) continue;
    Rational lam = qdot(n, v) / Rational(-nu);
    if (!best || lam < *best) best = lam;
  }
  return best;
}

namespace {

struct StrictSystem {
  std::vector<QVec> strict, weak, eq;
  bool impossible = false;
};

// Realizability conditions in the variables (x, t_L for marked legs).
StrictSystem realizability_system(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx,
                                  const std::optional<DegenerationMap>& over) {
  const std::size_t k = b.rank();
  std::vector<std::size_t> aux(t.legs.size(), kUnresolved);
  std::size_t nvar = k;
  for (std::size_t i = 0; i < t.legs.size(); ++i)
    if (!t.legs[i].punctured) aux[i] = nvar++;
  StrictSystem s;
  auto row = [&](const IVec& f) {
    QVec r(nvar);
    for (std::size_t i = 0; i < k; ++i) r[i] = Rational(f[i]);
    return r;
  };
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    IMat m = b.vertex_map(v);
    for (const auto& n : cx.cone(t.vertices[v].sigma).cone.facets()) s.strict.push_back(row(mul_t(m, n)));
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const TypeEdge& E = t.edges[e];
    IMat w = E.u_cone ? arrow_matrix(cx, E.u_arrow) : IMat::identity(cx.rank(E.sigma));
    std::size_t c = E.u_cone ? *E.u_cone : E.sigma;
    IMat m = w * arrow_matrix(cx, E.src_arrow) * b.vertex_map(E.src);
    IVec l = b.edge_length(e);
    for (const auto& n : cx.cone(c).cone.facets())
      s.strict.push_back(row(add(scale(2, mul_t(m, n)), scale(dot(n, E.u), l))));
    s.strict.push_back(row(l));
  }
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    LegFrame f = leg_frame(t, i, cx);
    const Cone& c = cx.cone(f.cone).cone;
    IMat m = f.from_vertex * b.vertex_map(t.legs[i].vertex);
    if (t.legs[i].punctured) {
      if (c.contains(f.u)) continue;
      for (const auto& e : c.equations())
        if (dot(e, f.u) != 0) s.impossible = true;
      // n·u < 0 gives positive length; n·u = 0 keeps the leg off that facet.
      for (const auto& n : c.facets())
        if (dot(n, f.u) <= 0) s.strict.push_back(row(mul_t(m, n)));
    } else {
      for (const auto& n : c.facets()) {
        QVec r = row(mul_t(m, n));
        r[aux[i]] = Rational(dot(n, f.u));
        s.strict.push_back(r);
      }
      for (const auto& e : c.equations()) {
        QVec r(nvar);
        r[aux[i]] = Rational(dot(e, f.u));
        s.eq.push_back(r);
      }
      QVec r(nvar);
      r[aux[i]] = 1;
      s.strict.push_back(r);
    }
  }
  for (const auto& n : b.cone.facets()) s.weak.push_back(row(n));
  for (const auto& n : b.cone.equations()) s.eq.push_back(row(n));
  if (over) {
    const auto& p = over->functional;
    for (const auto& E : t.edges)
      if (dot(p[E.u_cone ? *E.u_cone : E.sigma], E.u) != 0) s.impossible = true;
    for (std::size_t i = 0; i < t.legs.size(); ++i) {
      LegFrame f = leg_frame(t, i, cx);
      if (dot(p[f.cone], f.u) != 0) s.impossible = true;
    }
    for (std::size_t v = 1; v < t.vertices.size(); ++v) {
      IVec a = mul_t(b.vertex_map(v), p[t.vertices[v].sigma]);
      IVec z = mul_t(b.vertex_map(0), p[t.vertices[0].sigma]);
      s.eq.push_back(row(sub(a, z)));
    }
  }
  return s;
}

bool satisfies(const StrictSystem& s, const QVec& y) {
  auto val = [&](const QVec& r) {
    Rational acc = 0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * y[i];
    return acc;
  };
  for (const auto& r : s.strict)
    if (val(r) <= 0) return false;
  for (const auto& r : s.weak)
    if (val(r) < 0) return false;
  for (const auto& r : s.eq)
    if (val(r) != 0) return false;
  return true;
}

// All lifts of global contact orders to representatives over σ(x) itself.
std::vector<PuncturedType> lifts(const PuncturedType& t, const ConeComplex& cx, std::size_t budget) {
  std::vector<std::vector<IVec>> choices;
  auto reps = [&](std::size_t sigma, std::size_t u_arrow, const IVec& u) {
    Star st = star_of(cx, sigma);
    const auto& ar = cx.arrows();
    std::optional<std::size_t> seed, self;
    for (std::size_t i = 0; i < st.objects.size(); ++i) {
      if (st.objects[i] == u_arrow) seed = i;
      if (st.objects[i] == cx.identity(sigma)) self = i;
    }
    if (!seed || !self || ar[u_arrow].src != sigma) throw Error("contact class arrow is not in the star");
    ContactClass cls = contact_orbit(cx, sigma, OrbitNode{*seed, u});
    if (cls.finite_monodromy != Tri::True) throw BudgetExceeded("budget exceeded");
    return cls.representatives(*self);
  };
  for (const auto& e : t.edges)
    if (e.u_cone) choices.push_back(reps(e.sigma, e.u_arrow, e.u));
  for (const auto& l : t.legs)
    if (l.u_cone) choices.push_back(reps(l.sigma, l.u_arrow, l.u));
  std::vector<PuncturedType> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (const auto& c : choices)
    if (c.empty()) return out;
  while (true) {
    if (out.size() >= budget) throw BudgetExceeded("budget exceeded");
    PuncturedType l = t;
    std::size_t k = 0;
    for (auto& e : l.edges)
      if (e.u_cone) {
        e.u = choices[k][pick[k]];
        e.u_cone.reset();
        e.u_arrow = kUnresolved;
        ++k;
      }
    for (auto& g : l.legs)
      if (g.u_cone) {
        g.u = choices[k][pick[k]];
        g.u_cone.reset();
        g.u_arrow = kUnresolved;
        ++k;
      }
    out.push_back(std::move(l));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace

Realization realizable(const PuncturedType& t, const ConeComplex& cx, const std::optional<DegenerationMap>& over,
                       std::size_t budget) {
  Realization res;
  std::vector<PuncturedType> cands = t.is_global() ? lifts(t, cx, budget) : std::vector<PuncturedType>{t};
  if (cands.empty()) {
    res.reason = "no lift of the contact classes";
    return res;
  }
  res.reason = "no tropical map of this type";
  for (const auto& c : cands) {
    BasicCone b;
    try {
      b = basic_cone(c, cx);
    } catch (const Error& e) {
      if (std::string(e.what()) != "empty basic cone") throw;
      res.reason = "empty basic cone";
      continue;
    }
    StrictSystem s = realizability_system(c, b, cx, over);
    if (s.impossible) continue;
    std::size_t nvar = b.rank();
    for (const auto& l : c.legs)
      if (!l.punctured) ++nvar;
    IVec w;
    QVec y = to_q(b.cone.interior_point());
    y.resize(nvar, Rational(1));
    if (satisfies(s, y)) {
      w = b.cone.interior_point();
    } else {
      auto sol = strict_feasible(nvar, s.strict, s.weak, s.eq);
      if (!sol) continue;
      w = primitive(IVec(sol->begin(), sol->begin() + b.rank()));
    }
    res.realizable = true;
    res.lifted = c;
    res.cone = b;
    res.witness = w;
    res.reason.clear();
    return res;
  }
  return res;
}

namespace {

// Facets of σ_s(x) containing the image of σ_t(φ(x)).
std::vector<IVec> facets_containing_image(const ConeComplex& cx, std::size_t target_cone, std::size_t source_cone) {
  auto a = first_arrow(cx, target_cone, source_cone);
  if (!a) throw Error("contraction does not respect cones");
  Cone img = cx.image(cx.arrows()[*a]);
  std::vector<IVec> out;
  for (const auto& n : cx.cone(source_cone).cone.facets()) {
    bool all = true;
    for (const auto& r : img.rays())
      if (dot(n, r) != 0) all = false;
    for (const auto& r : img.lineality())
      if (dot(n, r) != 0) all = false;
    if (all) out.push_back(n);
  }
  return out;
}

bool vanishes_on_image(const ConeComplex& cx, std::size_t target_cone, std::size_t source_cone, const IVec& h) {
  auto a = first_arrow(cx, target_cone, source_cone);
  if (!a) throw Error("contraction does not respect cones");
  Cone img = cx.image(cx.arrows()[*a]);
  for (const auto& r : img.rays())
    if (dot(h, r) != 0) return false;
  for (const auto& r : img.lineality())
    if (dot(h, r) != 0) return false;
  return true;
}

void add_unique(std::vector<IVec>& xs, const IVec& x) {
  if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
}

}  // namespace

BasicLocalization localize_basic(const Contraction& c, const BasicCone& b, const ConeComplex& cx) {
  const PuncturedType& s = c.source;
  std::vector<IVec> eqs;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    IMat m = b.vertex_map(v);
    for (const auto& n : facets_containing_image(cx, c.target.vertices[c.vertex_map[v]].sigma, s.vertices[v].sigma))
      eqs.push_back(mul_t(m, n));
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    if (!c.edge_map[e]) eqs.push_back(b.edge_length(e));
  std::vector<IVec> rays;
  for (const auto& r : b.cone.rays()) {
    bool on = true;
    for (const auto& f : eqs)
      if (dot(f, r) != 0) on = false;
    if (on) rays.push_back(r);
  }
  std::vector<IVec> lin;
  for (const auto& r : b.cone.lineality()) {
    bool on = true;
    for (const auto& f : eqs)
      if (dot(f, r) != 0) on = false;
    if (on) lin.push_back(r);
  }
  Cone face = Cone::from_generators(b.rank(), rays, lin);
  if (!is_face(face, b.cone)) throw Error("internal: not a face");
  return {face, localize_along_face(b.monoid, face)};
}

std::vector<Puncture> leg_punctures(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx) {
  std::vector<Puncture> out;
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    if (!t.legs[i].punctured) continue;
    LegFrame f = leg_frame(t, i, cx);
    out.push_back({ToricMonoid::from_dual_cone(cx.cone(f.cone).cone), f.from_vertex * b.vertex_map(t.legs[i].vertex),
                   f.u});
  }
  return out;
}

MonoidIdeal puncturing_ideal(const ToricMonoid& q, const std::vector<Puncture>& punctures) {
  std::vector<IVec> gens;
  for (const auto& p : punctures)
    for (const auto& h : p.target.generators())
      if (dot(p.u, h) < 0) add_unique(gens, mul_t(p.ev, h));
  return MonoidIdeal::generated(q, minimal_generators(q, gens));
}

MonoidIdeal puncturing_ideal(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx) {
  return puncturing_ideal(b.monoid, leg_punctures(t, b, cx));
}

FaceDecomposition puncturing_decomposition(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx) {
  return face_decomposition(b.monoid, leg_punctures(t, b, cx));
}

TypeIdeals marking_ideal(const Contraction& c, const BasicCone& b, const ConeComplex& cx) {
  const PuncturedType& s = c.source;
  const PuncturedType& t = c.target;
  if (s.is_global()) throw Error("source type must not be global");
  TypeIdeals ti;
  auto stalk_gens = [&](std::size_t tc, std::size_t sc, const IMat& ev, const IVec& u) {
    ToricMonoid p = ToricMonoid::from_dual_cone(cx.cone(sc).cone);
    for (const auto& h : p.generators()) {
      if (vanishes_on_image(cx, tc, sc, h)) continue;
      if (!u.empty() && dot(u, h) != 0) continue;
      add_unique(ti.target_gens, mul_t(ev, h));
    }
  };
  for (std::size_t v = 0; v < s.vertices.size(); ++v)
    stalk_gens(t.vertices[c.vertex_map[v]].sigma, s.vertices[v].sigma, b.vertex_map(v), {});
  for (std::size_t i = 0; i < s.legs.size(); ++i) {
    const TypeLeg& l = s.legs[i];
    stalk_gens(t.legs[c.leg_map[i]].sigma, l.sigma, arrow_matrix(cx, l.arrow) * b.vertex_map(l.vertex), l.u);
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    if (!c.edge_map[e]) continue;
    const TypeEdge& E = s.edges[e];
    stalk_gens(t.edges[*c.edge_map[e]].sigma, E.sigma, arrow_matrix(cx, E.src_arrow) * b.vertex_map(E.src), E.u);
    add_unique(ti.nodal_gens, b.edge_length(e));
  }
  BasicLocalization loc = localize_basic(c, b, cx);
  for (const auto& h : b.monoid.generators()) {
    bool vanish = true;
    for (const auto& r : loc.face.rays())
      if (dot(h, r) != 0) vanish = false;
    for (const auto& r : loc.face.lineality())
      if (dot(h, r) != 0) vanish = false;
    if (!vanish) add_unique(ti.basic_gens, h);
  }
  std::vector<IVec> weak = ti.target_gens, all;
  for (const auto& g : ti.nodal_gens) add_unique(weak, g);
  all = weak;
  for (const auto& g : ti.basic_gens) add_unique(all, g);
  ti.puncturing = puncturing_ideal(s, b, cx);
  ti.weak_marking = MonoidIdeal::generated(b.monoid, weak);
  ti.marking = MonoidIdeal::generated(b.monoid, all);
  return ti;
}

bool verify_realizable_marking(const Contraction& c, const BasicCone& b, const ConeComplex& cx) {
  if (!realizable(c.target, cx).realizable) throw Error("not realizable");
  TypeIdeals ti = marking_ideal(c, b, cx);
  return ideals_equal(ideal_sum(ti.weak_marking, ti.puncturing), MonoidIdeal::generated(b.monoid, ti.basic_gens));
}

BaseSpec parse_base(const std::string& s) {
  if (s == "logpoint") return {BaseSpec::Kind::LogPoint, 1};
  if (s.rfind("smooth:", 0) == 0) {
    try {
      Integer d(s.substr(7));
      if (d < 0) throw Error("negative");
      return {BaseSpec::Kind::Smooth, d};
    } catch (const std::exception&) {
    }
  }
  throw Error("invalid base " + s + " (expected smooth:d or logpoint)");
}

Integer moduli_dimension(const PuncturedType& t, const ConeComplex& cx, const BaseSpec& base) {
  Realization r = realizable(t, cx);
  if (!r.realizable) throw Error("not realizable");
  return 3 * t.total_genus() - 3 + Integer(t.legs.size()) - Integer(r.cone->rank()) + base.dim;
}

LocalModel local_model(const Contraction& c, const BasicCone& b, const ConeComplex& cx, std::size_t s_count,
                       std::size_t r_count) {
  TypeIdeals ti = marking_ideal(c, b, cx);
  LocalModel m;
  m.monoid = b.monoid;
  std::vector<IVec> gens = ti.marking.gens();
  for (const auto& g : ti.puncturing.gens()) add_unique(gens, g);
  m.ideal_gens = minimal_generators(b.monoid, gens);
  m.ideal = MonoidIdeal::generated(b.monoid, m.ideal_gens);
  m.s = s_count;
  m.r = r_count;
  for (const auto& comp : radical_support_components(face_decomposition(m.ideal)))
    m.components.push_back({comp.face, comp.stratum_dim});
  return m;
}

namespace {

const IMat& sections_on(const GlobalSections& gs, std::size_t cone) { return gs.sections.at(cone); }

std::size_t section_count(const GlobalSections& gs) { return gs.sections.empty() ? 0 : gs.sections[0].rows(); }

}  // namespace

BalanceReport balancing_check(const PuncturedType& t, const GlobalSections& gs, const ConeComplex& cx) {
  const std::size_t r = section_count(gs);
  BalanceReport rep;
  for (const auto& v : t.vertices) {
    if (v.degrees.size() != r) throw Error("missing degrees at vertex " + v.id);
    rep.residuals.push_back(v.degrees);
  }
  auto pair = [&](std::size_t cone, const IVec& u) { return sections_on(gs, cone) * u; };
  for (const auto& e : t.edges) {
    IVec p = pair(e.u_cone ? *e.u_cone : e.sigma, e.u);
    rep.residuals[e.src] = add(rep.residuals[e.src], p);
    rep.residuals[e.dst] = sub(rep.residuals[e.dst], p);
  }
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    LegFrame f = leg_frame(t, i, cx);
    rep.residuals[t.legs[i].vertex] = add(rep.residuals[t.legs[i].vertex], pair(f.cone, f.u));
  }
  for (const auto& x : rep.residuals)
    if (!is_zero(x)) rep.ok = false;
  return rep;
}

bool total_degree_identity(const PuncturedType& t, const GlobalSections& gs, const ConeComplex& cx) {
  const std::size_t r = section_count(gs);
  IVec lhs = zeros(r), rhs = zeros(r);
  for (const auto& v : t.vertices) {
    if (v.degrees.size() != r) throw Error("missing degrees at vertex " + v.id);
    lhs = add(lhs, v.degrees);
  }
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    LegFrame f = leg_frame(t, i, cx);
    rhs = sub(rhs, sections_on(gs, f.cone) * f.u);
  }
  return lhs == rhs;
}

Integer virtual_dimension(const Integer& g, const Integer& k, const Integer& c1_dot_a, const Integer& n) {
  return c1_dot_a + n * (1 - g - k);
}

std::vector<Segment> plot_segments(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx,
                                   const QVec& x) {
  std::vector<Segment> out;
  std::vector<QVec> pos;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    pos.push_back(vertex_position(b, v, x));
    out.push_back({"vertex", t.vertices[v].id, t.vertices[v].sigma, pos.back(), pos.back()});
  }
  for (const auto& e : t.edges) {
    IMat w = e.u_cone ? arrow_matrix(cx, e.u_arrow) : IMat::identity(cx.rank(e.sigma));
    out.push_back({"edge", e.id, e.u_cone ? *e.u_cone : e.sigma, mul(w * arrow_matrix(cx, e.src_arrow), pos[e.src]),
                   mul(w * arrow_matrix(cx, e.dst_arrow), pos[e.dst])});
  }
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    LegFrame f = leg_frame(t, i, cx);
    QVec start = mul(f.from_vertex, pos[t.legs[i].vertex]);
    auto len = leg_length(b, t, cx, i, x);
    QVec end = start;
    for (std::size_t j = 0; j < end.size(); ++j) end[j] += (len ? *len : Rational(1)) * Rational(f.u[j]);
    out.push_back({"leg", t.legs[i].id, f.cone, start, end, !len});
  }
  return out;
}

}  // namespace puncta
