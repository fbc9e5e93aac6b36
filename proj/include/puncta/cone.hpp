#pragma once

#include "puncta/linalg.hpp"

namespace puncta {

// Rational polyhedral cone in Z^n, kept in both descriptions.
// Canonical form: rays primitive, orthogonal to the lineality space, sorted;
// facets primitive, orthogonal to span(cone)^perp, sorted; lineality and
// equations as HNF bases of saturated lattices.
class Cone {
 public:
  Cone() = default;
  static Cone from_generators(std::size_t n, const std::vector<IVec>& gens,
                              const std::vector<IVec>& lineality = {});
  static Cone from_inequalities(std::size_t n, const std::vector<IVec>& ineqs,
                                const std::vector<IVec>& eqs = {});
  static Cone zero(std::size_t n);
  static Cone full(std::size_t n);
  static Cone orthant(std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return n_ - eqs_.size(); }
  const std::vector<IVec>& rays() const { return rays_; }
  const std::vector<IVec>& lineality() const { return lin_; }
  const std::vector<IVec>& facets() const { return facets_; }
  const std::vector<IVec>& equations() const { return eqs_; }
  bool pointed() const { return lin_.empty(); }
  bool full_dimensional() const { return eqs_.empty(); }

  bool contains(const IVec& x) const;
  bool contains(const QVec& x) const;
  bool contains(const Cone& other) const;
  bool in_relint(const QVec& x) const;
  bool in_span(const IVec& x) const;
  // Sum of the rays; lies in the relative interior.
  IVec interior_point() const;
  // Saturated basis of span(cone) ∩ Z^n (HNF rows).
  std::vector<IVec> span_basis() const;
  // Indices of rays lying on the hyperplane ⟨f,x⟩ = 0.
  std::vector<std::size_t> rays_on(const IVec& f) const;
  // Smallest face containing x (x must lie in the cone).
  Cone minimal_face_containing(const QVec& x) const;

  Cone dual() const;
  bool operator==(const Cone& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<IVec> rays_, lin_, facets_, eqs_;
};

Cone dual_cone(const Cone& c);
// All faces, ordered by dimension then rays; includes the minimal face and c.
std::vector<Cone> faces(const Cone& c);
// Faces of c, raising BudgetExceeded beyond the given count.
std::vector<Cone> faces(const Cone& c, std::size_t budget);
bool is_face(const Cone& f, const Cone& c);

// Extreme rays and lineality of {x : A x >= 0, E x = 0} (canonical form).
struct VRep {
  std::vector<IVec> rays, lineality;
};
VRep double_description(std::size_t n, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs);

}  // namespace puncta
