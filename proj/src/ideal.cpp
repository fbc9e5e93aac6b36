#include "puncta/ideal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace puncta {

namespace {

void check_same_ambient(const MonoidIdeal& a, const MonoidIdeal& b) {
  if (a.ambient().ambient_rank() != b.ambient().ambient_rank() ||
      a.ambient().group_basis() != b.ambient().group_basis() ||
      a.ambient().dual_cone() != b.ambient().dual_cone())
    throw Error("ideals live in different monoids");
}

bool vanishes_on(const ToricMonoid& p, const IVec& m, const Cone& f) {
  IVec y = *p.coords(m);
  for (const auto& r : f.rays())
    if (dot(y, r) != 0) return false;
  return true;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (q * b < a) ++q;
  return q;
}

// Minimal generators of (g + P) ∩ (h + P), up to degree bound; P sharp.
std::vector<IVec> pair_intersection(const ToricMonoid& p, const IVec& g, const IVec& h,
                                    std::size_t budget) {
  const Cone& c = p.real_cone();
  const std::size_t r = p.rank();
  IVec yg = *p.coords(g), yh = *p.coords(h);
  std::vector<IVec> ineqs, eqs;
  for (const auto& n : c.facets()) {
    IVec a = n, b = n;
    a.push_back(-dot(n, yg));
    b.push_back(-dot(n, yh));
    ineqs.push_back(a);
    ineqs.push_back(b);
  }
  IVec t = zeros(r + 1);
  t[r] = 1;
  ineqs.push_back(t);
  for (const auto& e : c.equations()) {
    IVec a = e;
    a.push_back(0);
    eqs.push_back(a);
  }
  VRep vr = double_description(r + 1, ineqs, eqs);
  const IVec w = p.grading();
  Integer vmax = 0, rmax = 0;
  for (const auto& v : vr.rays) {
    IVec y(v.begin(), v.begin() + r);
    if (v[r] > 0)
      vmax = std::max(vmax, ceil_div(dot(w, y), v[r]));
    else
      rmax = std::max(rmax, dot(w, y));
  }
  Integer bound = vmax + Integer(c.dim()) * rmax;
  std::vector<IVec> out;
  for (const auto& z : p.elements_up_to_degree(bound - dot(w, yg), budget)) {
    IVec x = add(g, z);
    if (p.contains(sub(x, h))) out.push_back(x);
  }
  return out;
}

MaterializedIdeal materialize_rec(const MonoidIdeal& i, std::size_t budget) {
  const ToricMonoid& p = i.ambient();
  if (i.form() == MonoidIdeal::Form::Generated) return {minimal_generators(p, i.gens()), true};
  if (i.parts().empty()) return {{zeros(p.ambient_rank())}, true};
  MaterializedIdeal acc = materialize_rec(i.parts()[0], budget);
  for (std::size_t k = 1; k < i.parts().size(); ++k) {
    MaterializedIdeal next = materialize_rec(i.parts()[k], budget);
    MaterializedIdeal res;
    res.complete = acc.complete && next.complete;
    std::vector<IVec> cand;
    for (const auto& g : acc.gens)
      for (const auto& h : next.gens) {
        try {
          auto part = pair_intersection(p, g, h, budget);
          cand.insert(cand.end(), part.begin(), part.end());
        } catch (const BudgetExceeded&) {
          res.complete = false;
        }
      }
    res.gens = minimal_generators(p, cand);
    acc = std::move(res);
  }
  return acc;
}

MonoidIdeal image_ideal(const MonoidIdeal& i, const Localization& loc) {
  if (i.form() == MonoidIdeal::Form::Generated) {
    std::vector<IVec> g;
    for (const auto& x : i.gens()) g.push_back(loc.chi(x));
    return MonoidIdeal::generated(loc.monoid, g);
  }
  std::vector<MonoidIdeal> parts;
  for (const auto& q : i.parts()) parts.push_back(image_ideal(q, loc));
  return MonoidIdeal::intersection(loc.monoid, parts);
}

}  // namespace

MonoidIdeal MonoidIdeal::generated(const ToricMonoid& p, std::vector<IVec> gens) {
  MonoidIdeal i;
  i.p_ = p;
  for (const auto& g : gens)
    if (!p.contains(g)) throw Error("ideal generator not in monoid");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  i.gens_ = std::move(gens);
  return i;
}

MonoidIdeal MonoidIdeal::intersection(const ToricMonoid& p, std::vector<MonoidIdeal> parts) {
  MonoidIdeal i;
  i.p_ = p;
  i.form_ = Form::Intersection;
  for (const auto& q : parts) check_same_ambient(i, q);
  i.parts_ = std::move(parts);
  return i;
}

bool MonoidIdeal::contains(const IVec& m) const {
  if (!p_.contains(m)) return false;
  if (form_ == Form::Generated) {
    for (const auto& g : gens_)
      if (p_.contains(sub(m, g))) return true;
    return false;
  }
  for (const auto& q : parts_)
    if (!q.contains(m)) return false;
  return true;
}

bool MonoidIdeal::avoids_face(const Cone& f) const {
  if (form_ == Form::Generated) {
    for (const auto& g : gens_)
      if (vanishes_on(p_, g, f)) return false;
    return true;
  }
  if (parts_.empty()) return false;
  for (const auto& q : parts_)
    if (q.avoids_face(f)) return true;
  return false;
}

bool ideal_member(const MonoidIdeal& i, const IVec& m) { return i.contains(m); }

MonoidIdeal ideal_from_functional(const ToricMonoid& p, const IVec& u) {
  std::vector<IVec> g;
  for (const auto& h : p.hilbert_basis())
    if (dot(u, *p.coords(h)) != 0) g.push_back(h);
  return MonoidIdeal::generated(p, g);
}

MonoidIdeal ideal_sum(const MonoidIdeal& a, const MonoidIdeal& b) {
  check_same_ambient(a, b);
  if (a.form() == MonoidIdeal::Form::Generated && b.form() == MonoidIdeal::Form::Generated) {
    std::vector<IVec> g = a.gens();
    g.insert(g.end(), b.gens().begin(), b.gens().end());
    return MonoidIdeal::generated(a.ambient(), g);
  }
  std::vector<IVec> g = materialize(a).gens;
  auto gb = materialize(b).gens;
  g.insert(g.end(), gb.begin(), gb.end());
  return MonoidIdeal::generated(a.ambient(), g);
}

MonoidIdeal ideal_intersection(const MonoidIdeal& a, const MonoidIdeal& b) {
  check_same_ambient(a, b);
  return MonoidIdeal::intersection(a.ambient(), {a, b});
}

std::vector<IVec> minimal_generators(const ToricMonoid& p, const std::vector<IVec>& gens) {
  std::vector<IVec> g = gens;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<IVec> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j)
      if (j != i && p.contains(sub(g[i], g[j]))) {
        // Mutually dividing generators differ by a unit; keep the smaller one.
        redundant = !p.contains(sub(g[j], g[i])) || j < i;
      }
    if (!redundant) out.push_back(g[i]);
  }
  return out;
}

MaterializedIdeal materialize(const MonoidIdeal& i, std::size_t budget) {
  if (i.form() == MonoidIdeal::Form::Intersection && !i.ambient().sharp())
    throw Error("not pointed");
  return materialize_rec(i, budget);
}

bool ideals_equal(const MonoidIdeal& a, const MonoidIdeal& b) {
  check_same_ambient(a, b);
  for (const auto& g : materialize(a).gens)
    if (!b.contains(g)) return false;
  for (const auto& g : materialize(b).gens)
    if (!a.contains(g)) return false;
  return true;
}

std::vector<Cone> FaceDecomposition::included_faces() const {
  std::vector<Cone> out;
  for (std::size_t k = 0; k < faces.size(); ++k)
    if (included[k]) out.push_back(faces[k]);
  return out;
}

std::vector<Cone> FaceDecomposition::excluded_faces() const {
  std::vector<Cone> out;
  for (std::size_t k = 0; k < faces.size(); ++k)
    if (!included[k]) out.push_back(faces[k]);
  return out;
}

FaceDecomposition face_decomposition(const ToricMonoid& q, const std::vector<Puncture>& punctures,
                                     std::size_t budget) {
  FaceDecomposition d;
  d.cone = q.dual_cone();
  d.rank = q.rank();
  d.faces = faces(d.cone, budget);
  std::vector<std::vector<IVec>> hb;
  for (const auto& pu : punctures) {
    if (pu.ev.cols() != q.rank() || pu.ev.rows() != pu.target.rank() || pu.u.size() != pu.target.rank())
      throw Error("puncture data has the wrong shape");
    std::vector<IVec> h;
    for (const auto& m : pu.target.generators()) h.push_back(*pu.target.coords(m));
    hb.push_back(std::move(h));
  }
  for (const auto& f : d.faces) {
    IVec x = f.interior_point();
    bool inc = true;
    for (std::size_t i = 0; i < punctures.size() && inc; ++i) {
      IVec e = punctures[i].ev * x;
      for (const auto& m : hb[i])
        if (dot(e, m) == 0 && dot(punctures[i].u, m) < 0) {
          inc = false;
          break;
        }
    }
    d.included.push_back(inc);
  }
  return d;
}

FaceDecomposition face_decomposition(const MonoidIdeal& i, std::size_t budget) {
  FaceDecomposition d;
  d.cone = i.ambient().dual_cone();
  d.rank = i.ambient().rank();
  d.faces = faces(d.cone, budget);
  for (const auto& f : d.faces) d.included.push_back(i.avoids_face(f));
  return d;
}

std::vector<SupportComponent> radical_support_components(const FaceDecomposition& d) {
  std::vector<SupportComponent> out;
  for (std::size_t k = 0; k < d.faces.size(); ++k) {
    if (!d.included[k]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < d.faces.size() && minimal; ++j)
      if (j != k && d.included[j] && d.faces[j].dim() < d.faces[k].dim() &&
          d.faces[k].contains(d.faces[j]))
        minimal = false;
    if (minimal) out.push_back({d.faces[k], d.rank - d.faces[k].dim()});
  }
  return out;
}

std::optional<Integer> stratum_length(const ToricMonoid& p, const MonoidIdeal& i, const Cone& f,
                                      std::size_t budget) {
  Localization loc = localize_along_face(p, f);
  MonoidIdeal ii = image_ideal(i, loc);
  const ToricMonoid& pf = loc.monoid;
  // The complement of an ideal is closed under taking summands, so a search through
  // non-members from 0 reaches all of them.
  IVec zero = zeros(pf.ambient_rank());
  if (ii.contains(zero)) return Integer(0);
  std::vector<IVec> hb = pf.rank() == 0 ? std::vector<IVec>{} : pf.hilbert_basis();
  std::set<IVec> seen{zero};
  std::deque<IVec> queue{zero};
  while (!queue.empty()) {
    IVec x = queue.front();
    queue.pop_front();
    for (const auto& h : hb) {
      IVec y = add(x, h);
      if (seen.count(y) || ii.contains(y)) continue;
      seen.insert(y);
      if (seen.size() > budget) return std::nullopt;
      queue.push_back(y);
    }
  }
  return Integer(seen.size());
}

}  // namespace puncta
