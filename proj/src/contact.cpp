#include "puncta/contact.hpp"

#include <deque>
#include <set>

namespace puncta {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<IVec> ContactClass::representatives(std::size_t object) const {
  std::vector<IVec> out;
  for (const auto& n : orbit)
    if (n.object == object) out.push_back(n.u);
  return out;
}

namespace {

std::optional<IVec> pull_back(const IMat& m, const IVec& u) {
  auto s = solve_integral(m, u);
  if (!s) return std::nullopt;
  return s->particular;
}

}  // namespace

ContactClass contact_orbit(const ConeComplex& cx, std::size_t sigma, const OrbitNode& seed,
                           std::size_t budget) {
  ContactClass cls;
  cls.base = sigma;
  cls.star = star_of(cx, sigma);
  const auto& ar = cx.arrows();
  if (seed.object >= cls.star.objects.size()) throw Error("seed is not in the star");
  if (seed.u.size() != cx.rank(ar[cls.star.objects[seed.object]].dst)) throw Error("seed has wrong rank");
  std::set<OrbitNode> seen{seed};
  std::deque<OrbitNode> queue{seed};
  bool truncated = false;
  auto visit = [&](OrbitNode n) {
    if (seen.count(n)) return;
    if (seen.size() >= budget) {
      truncated = true;
      return;
    }
    seen.insert(n);
    queue.push_back(std::move(n));
  };
  while (!queue.empty() && !truncated) {
    OrbitNode n = queue.front();
    queue.pop_front();
    for (const auto& m : cls.star.morphisms) {
      if (m.from == n.object) visit({m.to, ar[m.arrow].matrix * n.u});
      if (m.to == n.object)
        if (auto p = pull_back(ar[m.arrow].matrix, n.u)) visit({m.from, *p});
    }
  }
  cls.orbit.assign(seen.begin(), seen.end());
  cls.finite_monodromy = truncated ? Tri::Unknown : Tri::True;
  bool multiple = false;
  for (std::size_t k = 1; k < cls.orbit.size(); ++k)
    if (cls.orbit[k].object == cls.orbit[k - 1].object) multiple = true;
  cls.monodromy_free = multiple ? Tri::False : (truncated ? Tri::Unknown : Tri::True);
  return cls;
}

ContactClass contact_orbit(const ConeComplex& cx, std::size_t sigma, std::size_t target_cone, const IVec& u,
                           std::size_t budget) {
  Star s = star_of(cx, sigma);
  for (std::size_t i = 0; i < s.objects.size(); ++i)
    if (cx.arrows()[s.objects[i]].dst == target_cone) return contact_orbit(cx, sigma, {i, u}, budget);
  throw Error("cone " + cx.cone(target_cone).id + " is not in the star of " + cx.cone(sigma).id);
}

bool monodromy_free(const ContactClass& cls) {
  if (cls.monodromy_free == Tri::Unknown) throw Error("monodromy unknown");
  return cls.monodromy_free == Tri::True;
}

LocalStratum local_evaluation_stratum(const ToricMonoid& p, const std::vector<IVec>& reps) {
  LocalStratum out;
  std::vector<MonoidIdeal> parts;
  for (const auto& u : reps) parts.push_back(ideal_from_functional(p, u));
  out.ideal = parts.size() == 1 ? parts[0] : MonoidIdeal::intersection(p, parts);
  for (const auto& f : faces(p.dual_cone()))
    for (const auto& u : reps)
      if (f.in_span(u)) {
        out.reduced_support.push_back(f);
        break;
      }
  return out;
}

EvaluationStratum evaluation_stratum(const ConeComplex& cx, const ContactClass& cls) {
  if (cls.finite_monodromy != Tri::True) throw Error("infinite monodromy");
  EvaluationStratum es;
  const auto& ar = cx.arrows();
  for (std::size_t i = 0; i < cls.star.objects.size(); ++i) {
    const FaceArrow& a = ar[cls.star.objects[i]];
    StratumData sd;
    sd.object = i;
    sd.monoid = ToricMonoid::from_dual_cone(cx.cone(a.dst).cone);
    sd.reps = cls.representatives(i);
    if (sd.reps.empty()) continue;
    LocalStratum ls = local_evaluation_stratum(sd.monoid, sd.reps);
    sd.ideal_u = ls.ideal;
    Cone img = cx.image(a);
    std::vector<IVec> j;
    for (const auto& h : sd.monoid.generators()) {
      bool vanish = true;
      for (const auto& r : img.rays())
        if (dot(h, r) != 0) vanish = false;
      if (!vanish) j.push_back(h);
    }
    MonoidIdeal js = MonoidIdeal::generated(sd.monoid, j);
    if (ls.ideal.form() == MonoidIdeal::Form::Generated) {
      sd.ideal = ideal_sum(ls.ideal, js);
    } else {
      // Keep the intersection lazy: (∩ I_k) + J ⊆ ∩ (I_k + J), and both have the same radical.
      std::vector<MonoidIdeal> parts;
      for (const auto& part : ls.ideal.parts()) parts.push_back(ideal_sum(part, js));
      sd.ideal = MonoidIdeal::intersection(sd.monoid, parts);
    }
    for (const auto& f : ls.reduced_support)
      if (f.contains(img)) sd.reduced_support.push_back(f);
    es.strata.push_back(std::move(sd));
  }
  return es;
}

ContactComponent connected_contact_component(const ConeComplex& cx, std::size_t cone, const IVec& u,
                                             std::size_t budget) {
  if (u.size() != cx.rank(cone)) throw Error("contact order has wrong rank");
  using Node = std::pair<std::size_t, IVec>;
  const auto& ar = cx.arrows();
  std::set<Node> seen{{cone, u}};
  std::deque<Node> queue{{cone, u}};
  ContactComponent cc;
  while (!queue.empty()) {
    Node n = queue.front();
    queue.pop_front();
    for (const auto& a : ar) {
      std::optional<Node> next;
      if (a.src == n.first) next = Node{a.dst, a.matrix * n.second};
      if (next && !seen.count(*next)) {
        if (seen.size() >= budget) {
          cc.complete = false;
          break;
        }
        seen.insert(*next);
        queue.push_back(*next);
      }
      if (a.dst == n.first)
        if (auto p = pull_back(a.matrix, n.second)) {
          Node m{a.src, *p};
          if (!seen.count(m)) {
            if (seen.size() >= budget) {
              cc.complete = false;
              break;
            }
            seen.insert(m);
            queue.push_back(m);
          }
        }
    }
    if (!cc.complete) break;
  }
  cc.nodes = seen.size();
  for (const auto& n : seen) {
    bool minimal = true;
    for (const auto& a : ar)
      if (a.dst == n.first && a.src != a.dst && cx.cone(a.src).cone.dim() < cx.cone(a.dst).cone.dim() &&
          pull_back(a.matrix, n.second)) {
        minimal = false;
        break;
      }
    if (minimal) cc.pieces.push_back(n);
  }
  return cc;
}

}  // namespace puncta
