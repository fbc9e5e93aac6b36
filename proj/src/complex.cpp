#include "puncta/complex.hpp"

#include <algorithm>
#include <set>

namespace puncta {

void check_face_arrow(const ComplexCone& src, const ComplexCone& dst, const IMat& m) {
  const std::size_t rs = src.lattice.rank, rd = dst.lattice.rank;
  if (m.rows() != rd || m.cols() != rs) throw Error("not a face embedding: matrix shape");
  if (puncta::rank(m) != rs) throw Error("not a face embedding: not injective");
  if (rs > 0 && lattice_index(m) != 1) throw Error("not a face embedding: image not saturated");
  std::vector<IVec> rays, lin;
  for (const auto& r : src.cone.rays()) rays.push_back(m * r);
  for (const auto& l : src.cone.lineality()) lin.push_back(m * l);
  if (!is_face(Cone::from_generators(rd, rays, lin), dst.cone))
    throw Error("not a face embedding: " + src.id + " -> " + dst.id);
}

ConeComplex::ConeComplex(std::vector<ComplexCone> cones, std::vector<FaceArrow> declared,
                         std::size_t budget)
    : cones_(std::move(cones)), declared_(std::move(declared)) {
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (cones_[i].cone.ambient_dim() != cones_[i].lattice.rank)
      throw Error("cone " + cones_[i].id + " does not live in its lattice");
    if (!index_.emplace(cones_[i].id, i).second) throw Error("duplicate cone id " + cones_[i].id);
  }
  std::set<FaceArrow> all;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    all.insert({i, i, IMat::identity(cones_[i].lattice.rank)});
  for (const auto& a : declared_) {
    if (a.src >= cones_.size() || a.dst >= cones_.size()) throw Error("arrow refers to unknown cone");
    check_face_arrow(cones_[a.src], cones_[a.dst], a.matrix);
    all.insert(a);
  }
  std::vector<FaceArrow> work(all.begin(), all.end());
  for (std::size_t k = 0; k < work.size(); ++k) {
    // Compose work[k] with everything composable; new arrows join the worklist.
    std::vector<FaceArrow> snapshot(all.begin(), all.end());
    for (const auto& b : snapshot) {
      if (b.src == work[k].dst) {
        FaceArrow c{work[k].src, b.dst, b.matrix * work[k].matrix};
        if (all.insert(c).second) work.push_back(c);
      }
      if (work[k].src == b.dst) {
        FaceArrow c{b.src, work[k].dst, work[k].matrix * b.matrix};
        if (all.insert(c).second) work.push_back(c);
      }
    }
    if (all.size() > budget) throw BudgetExceeded("arrow closure budget exceeded");
  }
  arrows_.assign(all.begin(), all.end());
}

std::size_t ConeComplex::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown cone " + id);
  return it->second;
}

std::vector<std::size_t> ConeComplex::arrows_from(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < arrows_.size(); ++k)
    if (arrows_[k].src == i) out.push_back(k);
  return out;
}

std::vector<std::size_t> ConeComplex::arrows_between(std::size_t src, std::size_t dst) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < arrows_.size(); ++k)
    if (arrows_[k].src == src && arrows_[k].dst == dst) out.push_back(k);
  return out;
}

std::size_t ConeComplex::identity(std::size_t i) const {
  IMat id = IMat::identity(rank(i));
  for (std::size_t k : arrows_between(i, i))
    if (arrows_[k].matrix == id) return k;
  throw Error("missing identity arrow");
}

std::vector<std::size_t> ConeComplex::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t k : arrows_from(i))
      if (cones_[arrows_[k].dst].cone.dim() > cones_[i].cone.dim()) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

Cone ConeComplex::image(const FaceArrow& a) const {
  std::vector<IVec> rays, lin;
  for (const auto& r : cones_[a.src].cone.rays()) rays.push_back(a.matrix * r);
  for (const auto& l : cones_[a.src].cone.lineality()) lin.push_back(a.matrix * l);
  return Cone::from_generators(rank(a.dst), rays, lin);
}

Star star_of(const ConeComplex& cx, std::size_t sigma) {
  if (sigma >= cx.size()) throw Error("unknown cone index");
  Star s;
  s.base = sigma;
  s.objects = cx.arrows_from(sigma);
  const auto& ar = cx.arrows();
  for (std::size_t i = 0; i < s.objects.size(); ++i)
    for (std::size_t j = 0; j < s.objects.size(); ++j) {
      const FaceArrow& a = ar[s.objects[i]];
      const FaceArrow& b = ar[s.objects[j]];
      for (std::size_t c : cx.arrows_between(a.dst, b.dst))
        if (ar[c].matrix * a.matrix == b.matrix) s.morphisms.push_back({i, j, c});
    }
  return s;
}

IMat mobius_wrap_matrix(std::size_t l) {
  IMat t = IMat::identity(3);
  t(0, 2) = Integer(l);
  t(1, 1) = -1;
  t(1, 2) = 1;
  return t;
}

namespace {

enum class Cell { O, R0, R1, B, T, V, S };

struct CoverCell {
  Cell kind;
  long n;
};

std::vector<IVec> cell_rays(const CoverCell& c) {
  auto p = [](long x, long y) { return IVec{Integer(x), Integer(y), Integer(1)}; };
  const long n = c.n;
  switch (c.kind) {
    case Cell::O: return {};
    case Cell::R0: return {p(n, 0)};
    case Cell::R1: return {p(n, 1)};
    case Cell::B: return {p(n, 0), p(n + 1, 0)};
    case Cell::T: return {p(n, 1), p(n + 1, 1)};
    case Cell::V: return {p(n, 0), p(n, 1)};
    case Cell::S: return {p(n, 0), p(n + 1, 0), p(n, 1), p(n + 1, 1)};
  }
  return {};
}

std::string cell_id(const CoverCell& c) {
  const std::string n = std::to_string(c.n);
  switch (c.kind) {
    case Cell::O: return "o";
    case Cell::R0: return "r_" + n + "_0";
    case Cell::R1: return "r_" + n + "_1";
    case Cell::B: return "b_" + n;
    case Cell::T: return "t_" + n;
    case Cell::V: return "v_" + n;
    case Cell::S: return "s_" + n;
  }
  return "";
}

// Canonical representative T^{-k} c with index in [0, l), and the matrix T^{-k}.
std::pair<CoverCell, IMat> canonical(const CoverCell& c, long l) {
  if (c.kind == Cell::O) return {c, IMat::identity(3)};
  long k = c.n >= 0 ? c.n / l : -((-c.n + l - 1) / l);
  CoverCell r{c.kind, c.n - k * l};
  if (k % 2 != 0) {
    if (r.kind == Cell::R0)
      r.kind = Cell::R1;
    else if (r.kind == Cell::R1)
      r.kind = Cell::R0;
    else if (r.kind == Cell::B)
      r.kind = Cell::T;
    else if (r.kind == Cell::T)
      r.kind = Cell::B;
  }
  IMat tinv = IMat::identity(3);
  tinv(0, 2) = Integer(-l);
  tinv(1, 1) = -1;
  tinv(1, 2) = 1;
  IMat t = mobius_wrap_matrix(std::size_t(l));
  IMat g = IMat::identity(3);
  for (long i = 0; i < (k < 0 ? -k : k); ++i) g = (k > 0 ? tinv : t) * g;
  return {r, g};
}

IMat solve_cols(const IMat& basis, const IMat& rhs) {
  IMat m(basis.cols(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto s = solve_integral(basis, rhs.col(j));
    if (!s) throw Error("internal: lattice map not integral");
    for (std::size_t i = 0; i < basis.cols(); ++i) m(i, j) = s->particular[i];
  }
  return m;
}

}  // namespace

ConeComplex build_mobius_fan(std::size_t l) {
  if (l < 2) throw Error("l too small");
  const long ll = long(l);
  std::vector<CoverCell> canon{{Cell::O, 0}};
  for (Cell k : {Cell::R0, Cell::R1, Cell::B, Cell::T, Cell::V, Cell::S})
    for (long n = 0; n < ll; ++n) canon.push_back({k, n});
  std::vector<CoverCell> cover{{Cell::O, 0}};
  for (Cell k : {Cell::R0, Cell::R1, Cell::B, Cell::T, Cell::V, Cell::S})
    for (long n = -1; n <= ll; ++n) cover.push_back({k, n});

  std::vector<ComplexCone> cones;
  std::vector<IMat> bases;
  std::map<std::string, std::size_t> pos;
  for (const auto& c : canon) {
    auto rays = cell_rays(c);
    auto sb = saturate_sublattice(rays, 3);
    IMat b = sb.empty() ? IMat(3, 0) : cols_to_mat(sb, 3);
    std::vector<IVec> local;
    for (const auto& r : rays) local.push_back(solve_integral(b, r)->particular);
    std::string id = cell_id(c);
    pos[id] = cones.size();
    cones.push_back({id, {"N_" + id, sb.size()}, Cone::from_generators(sb.size(), local)});
    bases.push_back(b);
  }
  std::vector<FaceArrow> declared;
  std::set<FaceArrow> seen;
  for (const auto& c : canon) {
    auto rc = cell_rays(c);
    std::set<IVec> rcs(rc.begin(), rc.end());
    for (const auto& d : cover) {
      auto rd = cell_rays(d);
      if (rd.size() <= rc.size()) continue;
      std::set<IVec> rds(rd.begin(), rd.end());
      if (!std::includes(rds.begin(), rds.end(), rcs.begin(), rcs.end())) continue;
      auto [dc, g] = canonical(d, ll);
      std::size_t si = pos[cell_id(c)], di = pos[cell_id(dc)];
      if (cones[di].cone.dim() != cones[si].cone.dim() + 1) continue;
      FaceArrow a{si, di, solve_cols(bases[di], g * bases[si])};
      if (seen.insert(a).second) declared.push_back(a);
    }
  }
  return ConeComplex(std::move(cones), std::move(declared));
}

void check_degeneration(const ConeComplex& cx, const DegenerationMap& p) {
  if (p.functional.size() != cx.size()) throw Error("degeneration map needs one functional per cone");
  for (std::size_t i = 0; i < cx.size(); ++i) {
    if (p.functional[i].size() != cx.rank(i)) throw Error("degeneration functional has wrong rank");
    for (const auto& r : cx.cone(i).cone.rays())
      if (dot(p.functional[i], r) < 0) throw Error("degeneration functional negative on " + cx.cone(i).id);
    for (const auto& l : cx.cone(i).cone.lineality())
      if (dot(p.functional[i], l) != 0) throw Error("degeneration functional negative on " + cx.cone(i).id);
  }
  for (const auto& a : cx.arrows()) {
    IMat f = rows_to_mat({p.functional[a.dst]}, cx.rank(a.dst));
    if ((f * a.matrix).row(0) != p.functional[a.src])
      throw Error("degeneration map incompatible along " + cx.cone(a.src).id + " -> " + cx.cone(a.dst).id);
  }
}

bool sections_compatible(const ConeComplex& cx, const GlobalSections& gs) {
  if (gs.sections.size() != cx.size()) return false;
  const std::size_t r = gs.count();
  for (std::size_t i = 0; i < cx.size(); ++i)
    if (gs.sections[i].rows() != r || gs.sections[i].cols() != cx.rank(i)) return false;
  for (const auto& a : cx.arrows())
    if (gs.sections[a.dst] * a.matrix != gs.sections[a.src]) return false;
  return true;
}

bool check_global_sections(const ConeComplex& cx, const GlobalSections& gs) {
  if (!sections_compatible(cx, gs)) return false;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    auto sb = cx.cone(i).cone.span_basis();
    if (sb.empty()) continue;
    if (puncta::rank(gs.sections[i] * cols_to_mat(sb, cx.rank(i))) != sb.size()) return false;
  }
  return true;
}

}  // namespace puncta
