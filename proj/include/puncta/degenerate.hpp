#pragma once

#include "puncta/moduli.hpp"

namespace puncta {

// Index of p(N_Q∨) in Z for the map ξ ↦ p(V_v(ξ)); raises "constant map" when p vanishes on Q∨.
Integer multiplicity(const PuncturedType& t, const DegenerationMap& p, const ConeComplex& cx);

// Invariant of a type under relabelling vertices and edges and reversing edges; legs keep ids.
std::string canonical_key(const PuncturedType& t);

struct DegenerationBounds {
  std::size_t max_vertices = 2;
  std::size_t max_edges = 1;
  Integer u_bound = 1;                   // |coordinate| bound on contact orders
  std::optional<std::size_t> codim = 1;  // nullopt keeps every codimension
  std::size_t budget = 200000;           // candidate types examined
  // When set, contact orders also satisfy |⟨s_j, u⟩| ≤ Σ_L |⟨s_j, u_L⟩| + Σ_v |deg_v(s_j)|.
  std::optional<GlobalSections> sections;
};

struct DegenerationEntry {
  PuncturedType type;
  Contraction contraction;
  Integer m = 1;
  std::size_t aut = 1;
  std::size_t codim = 0;
  std::string key;
};

struct DegenerationReport {
  std::vector<DegenerationEntry> entries;  // sorted by key
  bool exhausted = false;                  // budget ran out; entries are partial
  bool section_bound = false;
  std::size_t candidates = 0;
  DegenerationBounds bounds;
};

// Realizable τ′ (over p when given, with p nonconstant on Q∨_τ′) contracting onto τ within the bounds,
// one per isomorphism class.
DegenerationReport enumerate_degenerations(const PuncturedType& tau, const ConeComplex& cx,
                                           const std::optional<DegenerationMap>& p, const DegenerationBounds& bounds);

}  // namespace puncta
