#pragma once

#include "puncta/monoid.hpp"

namespace puncta {

class MonoidIdeal {
 public:
  enum class Form { Generated, Intersection };

  MonoidIdeal() = default;
  static MonoidIdeal generated(const ToricMonoid& p, std::vector<IVec> gens);
  static MonoidIdeal intersection(const ToricMonoid& p, std::vector<MonoidIdeal> parts);
  static MonoidIdeal empty(const ToricMonoid& p) { return generated(p, {}); }

  const ToricMonoid& ambient() const { return p_; }
  Form form() const { return form_; }
  const std::vector<IVec>& gens() const { return gens_; }
  const std::vector<MonoidIdeal>& parts() const { return parts_; }
  bool contains(const IVec& m) const;
  // No element of the ideal vanishes on the face f of the dual cone.
  bool avoids_face(const Cone& f) const;

 private:
  ToricMonoid p_;
  Form form_ = Form::Generated;
  std::vector<IVec> gens_;
  std::vector<MonoidIdeal> parts_;
};

bool ideal_member(const MonoidIdeal& i, const IVec& m);
MonoidIdeal ideal_from_functional(const ToricMonoid& p, const IVec& u);
MonoidIdeal ideal_sum(const MonoidIdeal& a, const MonoidIdeal& b);
MonoidIdeal ideal_intersection(const MonoidIdeal& a, const MonoidIdeal& b);
// Generators with redundant ones (members of the ideal of the others) removed, sorted.
std::vector<IVec> minimal_generators(const ToricMonoid& p, const std::vector<IVec>& gens);

struct MaterializedIdeal {
  std::vector<IVec> gens;
  bool complete = true;
};
// Minimal generators of any ideal; intersections via a degree bound from the vertices of
// (g + C) ∩ (h + C).
MaterializedIdeal materialize(const MonoidIdeal& i, std::size_t budget = 200000);
// Two-way generator membership (after materializing).
bool ideals_equal(const MonoidIdeal& a, const MonoidIdeal& b);

// Data of one puncture for the face decomposition: the stalk monoid P, the evaluation map
// from the coordinates of the dual of Q to those of the dual of P, and the contact order u.
struct Puncture {
  ToricMonoid target;
  IMat ev;
  IVec u;
};

struct FaceDecomposition {
  Cone cone;                 // the dual cone of Q
  std::vector<Cone> faces;   // all faces, by dimension
  std::vector<bool> included;
  std::size_t rank = 0;      // rank of Q^gp
  std::vector<Cone> included_faces() const;
  std::vector<Cone> excluded_faces() const;
};

FaceDecomposition face_decomposition(const ToricMonoid& q, const std::vector<Puncture>& punctures,
                                     std::size_t budget = 10000);
// Faces whose torus orbit lies in V(√I).
FaceDecomposition face_decomposition(const MonoidIdeal& i, std::size_t budget = 10000);

struct SupportComponent {
  Cone face;
  std::size_t stratum_dim;
};
std::vector<SupportComponent> radical_support_components(const FaceDecomposition& d);

// Number of elements of P_f outside I_f; nullopt means unbounded within the budget.
std::optional<Integer> stratum_length(const ToricMonoid& p, const MonoidIdeal& i, const Cone& f,
                                      std::size_t budget = 100000);

}  // namespace puncta
