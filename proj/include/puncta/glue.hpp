#pragma once

#include "puncta/moduli.hpp"

#include <random>

namespace puncta {

// A pair of legs to be joined into an edge oriented from the first leg's vertex. Leg ids must
// be unique across all parts.
struct LegMatch {
  std::string first, second;
};

// Parses "a=b,c=d".
std::vector<LegMatch> parse_matches(const std::string& s);

// Edge id for a glued pair: the original edge when both legs came from splitting it.
std::string glued_edge_id(const TypeLeg& a, const TypeLeg& b);

PuncturedType glue_types(const std::vector<PuncturedType>& parts, const std::vector<LegMatch>& matches,
                         const ConeComplex& cx, bool allow_disconnected = false);

struct GluingCheck {
  bool ok = true;
  std::string message;
  std::size_t points = 0;
};
// Samples rays and random points of the glued Q∨: restrictions land in each part's Q∨, matched
// legs reach each other (ℓ_L + ℓ_L' ≥ ℓ_E), and every split ℓ_E = λ + λ' with endpoints agreeing
// lifts back to the same glued point.
GluingCheck check_gluing_compatibility(const std::vector<PuncturedType>& parts, const std::vector<LegMatch>& matches,
                                       const PuncturedType& glued, const ConeComplex& cx, std::size_t samples = 20,
                                       unsigned seed = 1);

struct NodeMonoidData {
  ToricMonoid base;
  IVec rho1, rho2, rho_q;
  AffineMonoid q12{0, {}};  // in Q^gp ⊕ Z, ambient coordinates of Q then the node coordinate
  bool integral = true;
  bool saturated = false;
  Cone dual;  // points (ξ, t) with ξ ∈ Q∨ and 0 ≤ t ≤ ρ_q(ξ)
};
NodeMonoidData node_monoid(const ToricMonoid& q, const IVec& rho1, const IVec& rho2);

}  // namespace puncta
