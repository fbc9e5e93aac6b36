#pragma once

#include "puncta/types.hpp"

namespace puncta {

// Q∨ for a type: points (V_v)_v, (ℓ_E)_E of ∏ N_σ(v) × Z^E subject to the edge equations.
// Coordinates of Q∨ are a subset of the ambient coordinates whenever one projects
// unimodularly onto the saturated span; Q = from_dual_cone(cone).
struct BasicCone {
  std::vector<std::size_t> vertex_offset;  // ambient position of each V_v block
  std::size_t edge_offset = 0;
  std::size_t ambient = 0;
  IMat basis;                        // ambient × rank, columns a basis of the saturated span
  std::vector<std::size_t> coords;   // ambient coordinates used, when unimodular
  std::vector<std::string> labels;   // one per coordinate of Q∨
  Cone cone;                         // Q∨ in its own coordinates
  ToricMonoid monoid;                // Q
  bool pointed = true;               // false when some σ(v) has lineality
  std::size_t rank() const { return basis.cols(); }

  QVec to_ambient(const QVec& x) const;
  std::optional<QVec> to_local(const QVec& ambient_point) const;
  // Pullback of an ambient functional to Q∨ coordinates.
  IVec pull(const IVec& ambient_functional) const;
  // Functionals on Q∨ giving V_v (rows) and ℓ_E.
  IMat vertex_map(std::size_t v) const;
  IVec edge_length(std::size_t e) const;
  // Human-readable linear combination of labels, e.g. "rho+l1".
  std::string format(const IVec& functional) const;
};

BasicCone basic_cone(const PuncturedType& t, const ConeComplex& cx);

// The cone and contact order a leg lives in: σ(L) or its u_cone, with the map from V_v.
struct LegFrame {
  std::size_t cone;
  IMat from_vertex;  // N_σ(v) -> N_cone
  IVec u;
};
LegFrame leg_frame(const PuncturedType& t, std::size_t leg, const ConeComplex& cx);

QVec vertex_position(const BasicCone& b, std::size_t v, const QVec& x);
// sup{λ ≥ 0 : V + λu ∈ σ(L)}; nullopt is infinity.
std::optional<Rational> leg_length(const BasicCone& b, const PuncturedType& t, const ConeComplex& cx,
                                   std::size_t leg, const QVec& x);

struct Realization {
  bool realizable = false;
  PuncturedType lifted;  // t itself unless global contact classes were lifted
  std::optional<BasicCone> cone;
  IVec witness;          // a point of Q∨ of the lifted type
  std::string reason;
};
Realization realizable(const PuncturedType& t, const ConeComplex& cx,
                       const std::optional<DegenerationMap>& over = std::nullopt, std::size_t budget = 10000);

struct BasicLocalization {
  Cone face;
  Localization loc;
};
BasicLocalization localize_basic(const Contraction& c, const BasicCone& b, const ConeComplex& cx);

std::vector<Puncture> leg_punctures(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx);
MonoidIdeal puncturing_ideal(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx);
// Generators ev^T h for h in the generators of P with ⟨u, h⟩ < 0, over all punctures.
MonoidIdeal puncturing_ideal(const ToricMonoid& q, const std::vector<Puncture>& punctures);
FaceDecomposition puncturing_decomposition(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx);

struct TypeIdeals {
  std::vector<IVec> target_gens, nodal_gens, basic_gens;  // (i), (ii), (iii)
  MonoidIdeal puncturing, marking, weak_marking;
};
TypeIdeals marking_ideal(const Contraction& c, const BasicCone& b, const ConeComplex& cx);
// ⟨(i) ∪ (ii)⟩ + K = ⟨(iii)⟩; raises "not realizable" unless the target is.
bool verify_realizable_marking(const Contraction& c, const BasicCone& b, const ConeComplex& cx);

struct BaseSpec {
  enum class Kind { Smooth, LogPoint } kind = Kind::Smooth;
  Integer dim = 0;
};
BaseSpec parse_base(const std::string& s);
Integer moduli_dimension(const PuncturedType& t, const ConeComplex& cx, const BaseSpec& base);

struct ModelComponent {
  Cone face;
  std::size_t dim;
};
struct LocalModel {
  ToricMonoid monoid;
  MonoidIdeal ideal;
  std::vector<IVec> ideal_gens;
  std::size_t s = 0, r = 0;
  std::vector<ModelComponent> components;
};
LocalModel local_model(const Contraction& c, const BasicCone& b, const ConeComplex& cx, std::size_t s_count,
                       std::size_t r_count);

struct BalanceReport {
  bool ok = true;
  std::vector<IVec> residuals;  // per vertex, one entry per section
};
BalanceReport balancing_check(const PuncturedType& t, const GlobalSections& gs, const ConeComplex& cx);
bool total_degree_identity(const PuncturedType& t, const GlobalSections& gs, const ConeComplex& cx);

Integer virtual_dimension(const Integer& g, const Integer& k, const Integer& c1_dot_a, const Integer& n);

struct Segment {
  std::string kind;  // "vertex", "edge" or "leg"
  std::string id;
  std::size_t cone;
  QVec start, end;
  bool unbounded = false;
};
// Polylines of the tropical map at x; unbounded legs are drawn with unit length.
std::vector<Segment> plot_segments(const PuncturedType& t, const BasicCone& b, const ConeComplex& cx,
                                   const QVec& x);

}  // namespace puncta
