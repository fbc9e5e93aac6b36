#include "puncta/cone.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace puncta {

namespace {

using Bits = boost::dynamic_bitset<>;

void canonical_sort(std::vector<IVec>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Extreme rays of the pointed cone {y : A y >= 0} in Z^k.
std::vector<IVec> dd_pointed(std::size_t k, const std::vector<IVec>& A) {
  std::vector<IVec> lin, rays;
  for (std::size_t i = 0; i < k; ++i) lin.push_back(unit(k, i));
  std::vector<const IVec*> done;
  for (const auto& a : A) {
    if (is_zero(a)) continue;
    std::size_t li = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        li = i;
        break;
      }
    if (li < lin.size()) {
      IVec l = lin[li];
      Integer s = dot(a, l);
      if (s < 0) {
        l = neg(l);
        s = -s;
      }
      lin.erase(lin.begin() + li);
      for (auto& v : lin) {
        Integer t = dot(a, v);
        if (t != 0) v = primitive(sub(scale(s, v), scale(t, l)));
      }
      for (auto& r : rays) {
        Integer t = dot(a, r);
        if (t != 0) r = primitive(sub(scale(s, r), scale(t, l)));
      }
      rays.push_back(l);
      done.push_back(&a);
      continue;
    }
    std::vector<Integer> val(rays.size());
    bool has_neg = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i]);
      if (val[i] < 0) has_neg = true;
    }
    if (!has_neg) {
      done.push_back(&a);
      continue;
    }
    std::vector<Bits> tight(rays.size(), Bits(done.size()));
    for (std::size_t i = 0; i < rays.size(); ++i)
      for (std::size_t j = 0; j < done.size(); ++j)
        if (dot(*done[j], rays[i]) == 0) tight[i].set(j);
    std::vector<IVec> next;
    std::vector<std::size_t> pos, negs;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] >= 0) next.push_back(rays[i]);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) negs.push_back(i);
    }
    for (auto p : pos)
      for (auto q : negs) {
        Bits common = tight[p] & tight[q];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(tight[r])) adjacent = false;
        if (!adjacent) continue;
        next.push_back(primitive(add(scale(val[p], rays[q]), scale(-val[q], rays[p]))));
      }
    rays = std::move(next);
    done.push_back(&a);
  }
  if (!lin.empty()) throw Error("internal: cone not pointed after lineality removal");
  return rays;
}

}  // namespace

VRep double_description(std::size_t n, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs) {
  std::vector<IVec> all = eqs;
  all.insert(all.end(), ineqs.begin(), ineqs.end());
  VRep out;
  out.lineality = integer_kernel(rows_to_mat(all, n));
  std::vector<IVec> cut = eqs;
  cut.insert(cut.end(), out.lineality.begin(), out.lineality.end());
  std::vector<IVec> ubasis = integer_kernel(rows_to_mat(cut, n));
  const std::size_t k = ubasis.size();
  if (k == 0) return out;
  IMat U = cols_to_mat(ubasis, n);
  std::vector<IVec> A;
  for (const auto& a : ineqs) {
    IVec r(k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) r[j] += a[i] * U(i, j);
    A.push_back(r);
  }
  for (const auto& y : dd_pointed(k, A)) out.rays.push_back(primitive(U * y));
  canonical_sort(out.rays);
  return out;
}

Cone Cone::from_inequalities(std::size_t n, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs) {
  for (const auto& v : ineqs)
    if (v.size() != n) throw Error("inequality has wrong length");
  for (const auto& v : eqs)
    if (v.size() != n) throw Error("equation has wrong length");
  Cone c;
  c.n_ = n;
  VRep v = double_description(n, ineqs, eqs);
  VRep h = double_description(n, v.rays, v.lineality);
  c.rays_ = std::move(v.rays);
  c.lin_ = std::move(v.lineality);
  c.facets_ = std::move(h.rays);
  c.eqs_ = std::move(h.lineality);
  return c;
}

Cone Cone::from_generators(std::size_t n, const std::vector<IVec>& gens, const std::vector<IVec>& lineality) {
  for (const auto& v : gens)
    if (v.size() != n) throw Error("generator has wrong length");
  for (const auto& v : lineality)
    if (v.size() != n) throw Error("lineality generator has wrong length");
  Cone c;
  c.n_ = n;
  VRep h = double_description(n, gens, lineality);
  VRep v = double_description(n, h.rays, h.lineality);
  c.rays_ = std::move(v.rays);
  c.lin_ = std::move(v.lineality);
  c.facets_ = std::move(h.rays);
  c.eqs_ = std::move(h.lineality);
  return c;
}

Cone Cone::zero(std::size_t n) { return from_generators(n, {}); }
Cone Cone::full(std::size_t n) { return from_inequalities(n, {}); }
Cone Cone::orthant(std::size_t n) {
  std::vector<IVec> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit(n, i));
  return from_generators(n, g);
}

bool Cone::contains(const IVec& x) const {
  if (x.size() != n_) throw Error("point has wrong dimension");
  for (const auto& e : eqs_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const QVec& x) const {
  if (x.size() != n_) throw Error("point has wrong dimension");
  for (const auto& e : eqs_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& o) const {
  for (const auto& r : o.rays_)
    if (!contains(r)) return false;
  for (const auto& l : o.lin_)
    if (!contains(l) || !contains(neg(l))) return false;
  return true;
}

bool Cone::in_relint(const QVec& x) const {
  if (x.size() != n_) throw Error("point has wrong dimension");
  for (const auto& e : eqs_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) <= 0) return false;
  return true;
}

bool Cone::in_span(const IVec& x) const {
  for (const auto& e : eqs_)
    if (dot(e, x) != 0) return false;
  return true;
}

IVec Cone::interior_point() const {
  IVec s = zeros(n_);
  for (const auto& r : rays_) s = add(s, r);
  return s;
}

std::vector<IVec> Cone::span_basis() const {
  std::vector<IVec> g = rays_;
  g.insert(g.end(), lin_.begin(), lin_.end());
  return saturate_sublattice(g, n_);
}

std::vector<std::size_t> Cone::rays_on(const IVec& f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (dot(f, rays_[i]) == 0) out.push_back(i);
  return out;
}

Cone Cone::minimal_face_containing(const QVec& x) const {
  if (!contains(x)) throw Error("point not in cone");
  std::vector<IVec> keep;
  for (const auto& r : rays_) {
    bool ok = true;
    for (const auto& f : facets_)
      if (dot(f, x) == 0 && dot(f, r) != 0) {
        ok = false;
        break;
      }
    if (ok) keep.push_back(r);
  }
  return from_generators(n_, keep, lin_);
}

Cone Cone::dual() const {
  Cone d;
  d.n_ = n_;
  d.rays_ = facets_;
  d.lin_ = eqs_;
  d.facets_ = rays_;
  d.eqs_ = lin_;
  return d;
}

Cone dual_cone(const Cone& c) { return c.dual(); }

std::vector<Cone> faces(const Cone& c, std::size_t budget) {
  const auto& rays = c.rays();
  std::vector<Bits> on(c.facets().size(), Bits(rays.size()));
  for (std::size_t f = 0; f < c.facets().size(); ++f)
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (dot(c.facets()[f], rays[r]) == 0) on[f].set(r);
  std::set<Bits> seen;
  std::vector<Bits> queue;
  Bits top(rays.size());
  top.set();
  seen.insert(top);
  queue.push_back(top);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& f : on) {
      Bits s = queue[qi] & f;
      if (s == queue[qi] || seen.count(s)) continue;
      seen.insert(s);
      queue.push_back(s);
      if (queue.size() > budget) throw BudgetExceeded("dimension overflow");
    }
  }
  std::vector<Cone> out;
  for (const auto& s : queue) {
    std::vector<IVec> g;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (s.test(r)) g.push_back(rays[r]);
    out.push_back(Cone::from_generators(c.ambient_dim(), g, c.lineality()));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays() < b.rays();
  });
  return out;
}

std::vector<Cone> faces(const Cone& c) { return faces(c, 100000); }

bool is_face(const Cone& f, const Cone& c) {
  if (f.ambient_dim() != c.ambient_dim() || !c.contains(f)) return false;
  return c.minimal_face_containing(to_q(f.interior_point())) == f;
}

}  // namespace puncta
