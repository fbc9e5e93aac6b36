#pragma once

#include "puncta/cone.hpp"

#include <memory>
#include <utility>

namespace puncta {

// Saturated monoid P = C ∩ Λ, where Λ ⊆ Z^d has basis B (columns) and
// C = σ^∨ is described in the coordinates of Λ through its dual cone σ.
class ToricMonoid {
 public:
  ToricMonoid() = default;
  static ToricMonoid from_dual_cone(const Cone& sigma);
  // Saturation of the monoid generated by gens inside the group they generate.
  static ToricMonoid from_generators(std::size_t d, const std::vector<IVec>& gens);
  static ToricMonoid free(std::size_t n);

  std::size_t ambient_rank() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const IMat& group_basis() const { return basis_; }
  // σ, in the dual of the coordinate lattice.
  const Cone& dual_cone() const { return sigma_; }
  // The real cone of P in coordinates.
  const Cone& real_cone() const { return cone_; }
  bool sharp() const { return sigma_.full_dimensional(); }

  std::optional<IVec> coords(const IVec& m) const;
  IVec from_coords(const IVec& y) const;
  bool contains(const IVec& m) const;
  // Minimal generating set; raises "not pointed" unless sharp.
  const std::vector<IVec>& hilbert_basis() const;
  // Hilbert basis when sharp, otherwise ± a unit basis plus lifts of the Hilbert basis of P/P^*.
  std::vector<IVec> generators() const;
  // Coordinate functional strictly positive on P∖0 (requires sharp).
  IVec grading() const;
  Integer degree(const IVec& m) const;
  // All elements of degree <= bound (ambient coordinates, sorted by degree then lexicographically).
  std::vector<IVec> elements_up_to_degree(const Integer& bound, std::size_t budget) const;
  // Quotient by units; projection acts on coordinates.
  std::pair<ToricMonoid, IMat> sharpened() const;

 private:
  void init_coords();
  IMat basis_;
  Cone sigma_, cone_;
  std::vector<std::size_t> pivot_rows_;
  QMat pivot_inv_;
  struct Cache {
    bool done = false;
    std::vector<IVec> hb;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Homomorphism out of a toric monoid; the matrix acts on source coordinates.
struct MonoidHom {
  ToricMonoid source;
  IMat matrix;
  IVec operator()(const IVec& m) const;
};

std::vector<IVec> hilbert_basis(const ToricMonoid& p);
Cone dual_cone_of(const ToricMonoid& p);

struct Localization {
  ToricMonoid monoid;
  MonoidHom chi;
};
// f a face of p.dual_cone(); returns P_f and χ.
Localization localize_along_face(const ToricMonoid& p, const Cone& f);

// Monoid generated by a finite list of vectors (not necessarily saturated).
class AffineMonoid {
 public:
  AffineMonoid(std::size_t d, std::vector<IVec> gens);
  std::size_t dim() const { return d_; }
  const std::vector<IVec>& gens() const { return gens_; }
  // Exact decision of m ∈ ℕ·gens.
  bool contains(const IVec& m, std::size_t budget = 1000000) const;
  Cone real_cone() const;
  std::vector<IVec> group_basis() const;
  bool is_saturated() const;

 private:
  std::size_t d_;
  std::vector<IVec> gens_;
};

// Q∘ ⊆ Q^gp ⊕ Z generated by Q ⊕ N and the extra generators (q, m).
struct PuncturedMonoid {
  ToricMonoid base;
  std::vector<std::pair<IVec, Integer>> extras;

  AffineMonoid as_affine() const;
  bool contains(const IVec& q, const Integer& n) const;
  // No element (0, n) with n < 0.
  bool valid() const;
};

// phi: P -> Q^gp ⊕ Z on ambient coordinates of P (last row is the contact order).
PuncturedMonoid prestabilize(const ToricMonoid& p, const ToricMonoid& q, const IMat& phi);
IVec contact_order_of(const IMat& phi);
// nullopt stands for infinity.
std::optional<Integer> max_extension_order(const PuncturedMonoid& q0);

}  // namespace puncta
