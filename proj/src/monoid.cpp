#include "puncta/monoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace puncta {

namespace {

Integer floor_q(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

std::vector<std::vector<std::size_t>> triangulate(const std::vector<IVec>& rays,
                                                  const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<IVec> g;
  for (auto i : s) g.push_back(rays[i]);
  if (s.size() == rank(rows_to_mat(g, n))) return {s};
  Cone k = Cone::from_generators(n, g);
  const std::size_t r0 = s[0];
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : k.facets()) {
    if (dot(f, rays[r0]) == 0) continue;
    std::vector<std::size_t> face;
    for (auto i : s)
      if (dot(f, rays[i]) == 0) face.push_back(i);
    for (auto t : triangulate(rays, face, n)) {
      t.push_back(r0);
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Lattice points of the half-open fundamental parallelepiped of the columns of g.
std::vector<IVec> parallelepiped_points(const IMat& g) {
  const std::size_t n = g.rows();
  SmithForm s = smith_normal_form(g);
  QMat linv = *inverse(to_q(s.left));
  QMat ginv = *inverse(to_q(g));
  std::vector<IVec> out;
  IVec w = zeros(n);
  while (true) {
    QVec x = linv * to_q(w);
    QVec lam = ginv * x;
    for (auto& l : lam) l -= Rational(floor_q(l));
    out.push_back(*to_z(to_q(g) * lam));
    std::size_t i = 0;
    for (; i < n; ++i) {
      w[i] += 1;
      if (w[i] < s.diag[i]) break;
      w[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

// Hilbert basis of a pointed full-dimensional cone in Z^n.
std::vector<IVec> hilbert_basis_full(const Cone& c) {
  const std::size_t n = c.ambient_dim();
  const auto& rays = c.rays();
  std::vector<std::size_t> all(rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<IVec> cand(rays.begin(), rays.end());
  for (const auto& simplex : triangulate(rays, all, n)) {
    std::vector<IVec> cols;
    for (auto i : simplex) cols.push_back(rays[i]);
    for (auto& p : parallelepiped_points(cols_to_mat(cols, n)))
      if (!is_zero(p)) cand.insert(p);
  }
  std::vector<IVec> hb;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& y : cand)
      if (y != x && c.contains(sub(x, y))) {
        reducible = true;
        break;
      }
    if (!reducible) hb.push_back(x);
  }
  return hb;
}

}  // namespace

void ToricMonoid::init_coords() {
  pivot_rows_.clear();
  std::vector<IVec> chosen;
  for (std::size_t i = 0; i < basis_.rows() && chosen.size() < basis_.cols(); ++i) {
    auto trial = chosen;
    trial.push_back(basis_.row(i));
    if (puncta::rank(rows_to_mat(trial, basis_.cols())) == trial.size()) {
      chosen = trial;
      pivot_rows_.push_back(i);
    }
  }
  pivot_inv_ = *inverse(to_q(basis_.select_rows(pivot_rows_)));
}

ToricMonoid ToricMonoid::from_dual_cone(const Cone& sigma) {
  ToricMonoid p;
  p.basis_ = IMat::identity(sigma.ambient_dim());
  p.sigma_ = sigma;
  p.cone_ = sigma.dual();
  p.init_coords();
  return p;
}

ToricMonoid ToricMonoid::from_generators(std::size_t d, const std::vector<IVec>& gens) {
  ToricMonoid p;
  auto b = lattice_basis(gens, d);
  p.basis_ = cols_to_mat(b, d);
  if (b.empty()) p.basis_ = IMat(d, 0);
  p.init_coords();
  std::vector<IVec> cg;
  for (const auto& g : gens) cg.push_back(*p.coords(g));
  p.cone_ = Cone::from_generators(p.rank(), cg);
  p.sigma_ = p.cone_.dual();
  return p;
}

ToricMonoid ToricMonoid::free(std::size_t n) { return from_dual_cone(Cone::orthant(n)); }

std::optional<IVec> ToricMonoid::coords(const IVec& m) const {
  if (m.size() != ambient_rank()) throw Error("element has wrong length");
  QVec mj(pivot_rows_.size());
  for (std::size_t i = 0; i < pivot_rows_.size(); ++i) mj[i] = Rational(m[pivot_rows_[i]]);
  auto y = to_z(pivot_inv_ * mj);
  if (!y || basis_ * *y != m) return std::nullopt;
  return y;
}

IVec ToricMonoid::from_coords(const IVec& y) const { return basis_ * y; }

bool ToricMonoid::contains(const IVec& m) const {
  auto y = coords(m);
  return y && cone_.contains(*y);
}

const std::vector<IVec>& ToricMonoid::hilbert_basis() const {
  if (!sharp()) throw Error("not pointed");
  if (cache_->done) return cache_->hb;
  std::vector<IVec> out;
  auto sb = cone_.span_basis();
  if (!sb.empty()) {
    IMat s = cols_to_mat(sb, rank());
    std::vector<IVec> zr;
    for (const auto& r : cone_.rays()) zr.push_back(solve_integral(s, r)->particular);
    Cone full = Cone::from_generators(sb.size(), zr);
    for (const auto& z : hilbert_basis_full(full)) out.push_back(from_coords(s * z));
  }
  std::sort(out.begin(), out.end());
  cache_->hb = out;
  cache_->done = true;
  return cache_->hb;
}

std::vector<IVec> ToricMonoid::generators() const {
  if (sharp()) return hilbert_basis();
  std::vector<IVec> out;
  for (const auto& u : cone_.lineality()) {
    out.push_back(from_coords(u));
    out.push_back(from_coords(neg(u)));
  }
  auto [sh, proj] = sharpened();
  for (const auto& h : sh.hilbert_basis()) out.push_back(from_coords(solve_integral(proj, h)->particular));
  return out;
}

IVec ToricMonoid::grading() const {
  if (!sharp()) throw Error("not pointed");
  return sigma_.interior_point();
}

Integer ToricMonoid::degree(const IVec& m) const {
  auto y = coords(m);
  if (!y) throw Error("element not in the group of the monoid");
  return dot(grading(), *y);
}

std::vector<IVec> ToricMonoid::elements_up_to_degree(const Integer& bound, std::size_t budget) const {
  const IVec w = grading();
  std::vector<IVec> hb;
  std::vector<Integer> hd;
  for (const auto& h : hilbert_basis()) {
    hb.push_back(*coords(h));
    hd.push_back(dot(w, hb.back()));
  }
  std::map<Integer, std::vector<IVec>> buckets;
  std::set<IVec> seen;
  std::vector<IVec> out;
  if (bound < 0) return out;
  buckets[0].push_back(zeros(rank()));
  seen.insert(zeros(rank()));
  for (auto it = buckets.begin(); it != buckets.end(); ++it) {
    std::sort(it->second.begin(), it->second.end());
    for (const auto& x : it->second) {
      out.push_back(from_coords(x));
      for (std::size_t i = 0; i < hb.size(); ++i) {
        Integer d = it->first + hd[i];
        if (d > bound) continue;
        IVec y = add(x, hb[i]);
        if (!seen.insert(y).second) continue;
        if (seen.size() > budget) throw BudgetExceeded("element enumeration budget exceeded");
        buckets[d].push_back(y);
      }
    }
  }
  return out;
}

std::pair<ToricMonoid, IMat> ToricMonoid::sharpened() const {
  auto sb = sigma_.span_basis();
  IMat s = sb.empty() ? IMat(rank(), 0) : cols_to_mat(sb, rank());
  std::vector<IVec> zr;
  std::vector<IVec> zl;
  for (const auto& r : sigma_.rays()) zr.push_back(solve_integral(s, r)->particular);
  for (const auto& l : sigma_.lineality()) zl.push_back(solve_integral(s, l)->particular);
  Cone sig = Cone::from_generators(sb.size(), zr, zl);
  return {from_dual_cone(sig), s.transpose()};
}

IVec MonoidHom::operator()(const IVec& m) const {
  auto y = source.coords(m);
  if (!y) throw Error("element not in the source group");
  return matrix * *y;
}

std::vector<IVec> hilbert_basis(const ToricMonoid& p) { return p.hilbert_basis(); }
Cone dual_cone_of(const ToricMonoid& p) { return p.dual_cone(); }

Localization localize_along_face(const ToricMonoid& p, const Cone& f) {
  if (!is_face(f, p.dual_cone())) throw Error("not a face");
  auto sb = f.span_basis();
  const std::size_t r = p.rank();
  IMat s = sb.empty() ? IMat(r, 0) : cols_to_mat(sb, r);
  std::vector<IVec> zr;
  std::vector<IVec> zl;
  for (const auto& x : f.rays()) zr.push_back(solve_integral(s, x)->particular);
  for (const auto& l : f.lineality()) zl.push_back(solve_integral(s, l)->particular);
  Cone fs = Cone::from_generators(sb.size(), zr, zl);
  return {ToricMonoid::from_dual_cone(fs), MonoidHom{p, s.transpose()}};
}

AffineMonoid::AffineMonoid(std::size_t d, std::vector<IVec> gens) : d_(d), gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (g.size() != d_) throw Error("generator has wrong length");
}

bool AffineMonoid::contains(const IVec& m, std::size_t budget) const {
  if (m.size() != d_) throw Error("element has wrong length");
  if (is_zero(m)) return true;
  const std::size_t k = gens_.size();
  if (k == 0) return false;
  // Vertices and recession rays of {λ >= 0 : Σ λ_j g_j = m} bound a witness.
  std::vector<IVec> ineqs, eqs;
  for (std::size_t j = 0; j <= k; ++j) ineqs.push_back(unit(k + 1, j));
  for (std::size_t i = 0; i < d_; ++i) {
    IVec row(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens_[j][i];
    row[k] = -m[i];
    eqs.push_back(row);
  }
  VRep v = double_description(k + 1, ineqs, eqs);
  std::vector<Rational> vmax(k, Rational(-1));
  std::vector<Integer> rsum(k, Integer(0));
  bool any_vertex = false;
  for (const auto& r : v.rays) {
    if (r[k] > 0) {
      any_vertex = true;
      for (std::size_t j = 0; j < k; ++j) vmax[j] = std::max(vmax[j], Rational(r[j], r[k]));
    } else {
      for (std::size_t j = 0; j < k; ++j) rsum[j] += r[j];
    }
  }
  if (!any_vertex) return false;
  std::vector<Integer> bound(k);
  for (std::size_t j = 0; j < k; ++j) bound[j] = floor_q(vmax[j]) + rsum[j];

  std::set<std::pair<std::size_t, IVec>> failed;
  std::size_t nodes = 0;
  std::function<bool(std::size_t, const IVec&)> dfs = [&](std::size_t j, const IVec& res) -> bool {
    if (j == k) return is_zero(res);
    if (failed.count({j, res})) return false;
    if (++nodes > budget) throw BudgetExceeded("monoid membership budget exceeded");
    IVec cur = res;
    for (Integer l = 0; l <= bound[j]; ++l) {
      if (dfs(j + 1, cur)) return true;
      cur = sub(cur, gens_[j]);
    }
    failed.insert({j, res});
    return false;
  };
  return dfs(0, m);
}

Cone AffineMonoid::real_cone() const { return Cone::from_generators(d_, gens_); }

std::vector<IVec> AffineMonoid::group_basis() const { return lattice_basis(gens_, d_); }

bool AffineMonoid::is_saturated() const {
  ToricMonoid sat = ToricMonoid::from_generators(d_, gens_);
  for (const auto& g : sat.generators())
    if (!contains(g)) return false;
  return true;
}

AffineMonoid PuncturedMonoid::as_affine() const {
  const std::size_t d = base.ambient_rank();
  std::vector<IVec> g;
  for (const auto& b : base.generators()) g.push_back(concat(b, {Integer(0)}));
  g.push_back(unit(d + 1, d));
  for (const auto& [q, m] : extras) g.push_back(concat(q, {m}));
  return AffineMonoid(d + 1, g);
}

bool PuncturedMonoid::contains(const IVec& q, const Integer& n) const {
  return as_affine().contains(concat(q, {n}));
}

bool PuncturedMonoid::valid() const {
  const std::size_t d = base.ambient_rank();
  IVec down = zeros(d + 1);
  down[d] = -1;
  return !as_affine().real_cone().contains(down);
}

PuncturedMonoid prestabilize(const ToricMonoid& p, const ToricMonoid& q, const IMat& phi) {
  const std::size_t d = q.ambient_rank();
  if (phi.rows() != d + 1 || phi.cols() != p.ambient_rank()) throw Error("map shape mismatch");
  PuncturedMonoid out{q, {}};
  std::set<std::pair<IVec, Integer>> extras;
  for (const auto& h : p.hilbert_basis()) {
    IVec v = phi * h;
    IVec qq(v.begin(), v.begin() + d);
    if (v[d] >= 0 && q.contains(qq)) continue;
    extras.insert({qq, v[d]});
  }
  out.extras.assign(extras.begin(), extras.end());
  if (!out.valid()) throw Error("invalid puncturing");
  return out;
}

IVec contact_order_of(const IMat& phi) {
  if (phi.rows() == 0) throw Error("empty map");
  return phi.row(phi.rows() - 1);
}

std::optional<Integer> max_extension_order(const PuncturedMonoid& q0) {
  if (q0.base.ambient_rank() != 1 || q0.base.rank() != 1) throw Error("base monoid must be N");
  if (!q0.valid()) throw Error("invalid puncturing");
  std::optional<Integer> least;
  for (const auto& [q, m] : q0.extras)
    if (m < 0 && (!least || q[0] < *least)) least = q[0];
  if (!least) return std::nullopt;
  return *least - 1;
}

}  // namespace puncta
