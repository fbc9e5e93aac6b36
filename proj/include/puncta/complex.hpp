#pragma once

#include "puncta/cone.hpp"

#include <map>
#include <string>

namespace puncta {

// A cone in its own lattice N_σ (coordinates of rank lattice.rank).
struct ComplexCone {
  std::string id;
  Lattice lattice;
  Cone cone;
  // The cone was declared with an anonymous lattice of the given rank.
  bool anonymous_lattice = false;
};

// Face embedding N_src -> N_dst mapping the source cone onto a face of the target.
struct FaceArrow {
  std::size_t src = 0, dst = 0;
  IMat matrix;
  bool operator==(const FaceArrow&) const = default;
  auto operator<=>(const FaceArrow& o) const {
    if (auto c = src <=> o.src; c != 0) return c;
    if (auto c = dst <=> o.dst; c != 0) return c;
    if (matrix == o.matrix) return std::strong_ordering::equal;
    return matrix < o.matrix ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

// Generalized cone complex: a diagram of cones and face embeddings, self-gluings allowed.
class ConeComplex {
 public:
  ConeComplex() = default;
  // Validates the declared arrows and closes them under composition, adding identities.
  ConeComplex(std::vector<ComplexCone> cones, std::vector<FaceArrow> declared,
              std::size_t budget = 100000);

  std::size_t size() const { return cones_.size(); }
  const ComplexCone& cone(std::size_t i) const { return cones_.at(i); }
  const std::vector<ComplexCone>& cones() const { return cones_; }
  std::size_t index_of(const std::string& id) const;
  bool has(const std::string& id) const { return index_.count(id) > 0; }
  // All arrows (closed under composition, with identities), sorted.
  const std::vector<FaceArrow>& arrows() const { return arrows_; }
  // The arrows as declared.
  const std::vector<FaceArrow>& declared() const { return declared_; }
  std::vector<std::size_t> arrows_from(std::size_t i) const;
  std::vector<std::size_t> arrows_between(std::size_t src, std::size_t dst) const;
  std::size_t identity(std::size_t i) const;
  std::size_t rank(std::size_t i) const { return cones_.at(i).lattice.rank; }
  // Cones without outgoing arrows other than automorphisms.
  std::vector<std::size_t> maximal_cones() const;
  // Image of the source cone of an arrow inside its target.
  Cone image(const FaceArrow& a) const;

 private:
  std::vector<ComplexCone> cones_;
  std::vector<FaceArrow> declared_, arrows_;
  std::map<std::string, std::size_t> index_;
};

// Raises "not a face embedding" unless the arrow is valid.
void check_face_arrow(const ComplexCone& src, const ComplexCone& dst, const IMat& m);

// The category of arrows σ -> σ' with morphisms c: σ' -> σ'' such that c∘a = b.
struct Star {
  std::size_t base = 0;
  std::vector<std::size_t> objects;  // arrow indices with src = base
  struct Morphism {
    std::size_t from, to, arrow;  // object positions and the arrow index c
  };
  std::vector<Morphism> morphisms;
};
Star star_of(const ConeComplex& cx, std::size_t sigma);

// Cone over a Möbius strip made of l squares.
ConeComplex build_mobius_fan(std::size_t l);
// The wrap-around identification (x,y,z) -> (x + l z, z - y, z).
IMat mobius_wrap_matrix(std::size_t l);

// Per-cone integral functionals commuting with the arrows.
struct DegenerationMap {
  std::vector<IVec> functional;  // indexed by cone
};
// Raises on incompatibility or negativity on a cone.
void check_degeneration(const ConeComplex& cx, const DegenerationMap& p);

struct GlobalSections {
  std::vector<IMat> sections;  // per cone, r x rank
  std::size_t count() const { return sections.empty() ? 0 : sections[0].rows(); }
};
bool sections_compatible(const ConeComplex& cx, const GlobalSections& gs);
// Compatible and injective on the span of every cone.
bool check_global_sections(const ConeComplex& cx, const GlobalSections& gs);

}  // namespace puncta
