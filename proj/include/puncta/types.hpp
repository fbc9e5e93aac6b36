#pragma once

#include "puncta/contact.hpp"

#include <string>

namespace puncta {

inline constexpr std::size_t kUnresolved = std::size_t(-1);

struct TypeVertex {
  std::string id;
  Integer genus = 0;
  std::size_t sigma = 0;
  IVec degrees;                             // pairings with declared global sections
  std::vector<std::string> coord_labels;    // display names of the coordinates of V_v
};

struct TypeEdge {
  std::string id;
  std::size_t src = 0, dst = 0;  // vertex positions; u points from src to dst
  std::size_t sigma = 0;
  IVec u;
  // Arrow indices σ(src) -> σ(E) and σ(dst) -> σ(E).
  std::size_t src_arrow = kUnresolved, dst_arrow = kUnresolved;
  std::string length_label;
  // Global types: u lives in N_{u_cone}, reached from σ(E) by u_arrow.
  std::optional<std::size_t> u_cone;
  std::size_t u_arrow = kUnresolved;
};

// Provenance of a leg created by splitting an edge.
struct LegOrigin {
  std::string edge;
  bool src_side = true;
  bool operator==(const LegOrigin&) const = default;
};

struct TypeLeg {
  std::string id;
  std::size_t vertex = 0;
  std::size_t sigma = 0;
  IVec u;
  bool punctured = false;
  std::size_t arrow = kUnresolved;  // σ(vertex) -> σ(L)
  std::optional<std::size_t> u_cone;
  std::size_t u_arrow = kUnresolved;
  std::optional<LegOrigin> origin;
};

// A type (G, g, σ, u) of punctured maps to a cone complex, optionally decorated; a global
// type when some contact orders are given as classes via u_cone.
struct PuncturedType {
  std::vector<TypeVertex> vertices;
  std::vector<TypeEdge> edges;
  std::vector<TypeLeg> legs;
  bool allow_disconnected = false;

  bool is_global() const;
  std::size_t vertex_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;
  std::size_t leg_index(const std::string& id) const;
  Integer total_genus() const;
  std::size_t first_betti() const;
  bool connected() const;
};

// Fills unresolved arrows with the first arrow between the cones involved.
void resolve_arrows(PuncturedType& t, const ConeComplex& cx);
// Raises on violated invariants.
void validate_type(const PuncturedType& t, const ConeComplex& cx);
// The first arrow between two cones, or nullopt.
std::optional<std::size_t> first_arrow(const ConeComplex& cx, std::size_t src, std::size_t dst);

std::vector<PuncturedType> split_type(const PuncturedType& t, const std::vector<std::string>& edges,
                                      const ConeComplex& cx);

// Contraction φ: source -> target (target generic); edge_map entries nullopt are contracted.
struct Contraction {
  PuncturedType source, target;
  std::vector<std::size_t> vertex_map;
  std::vector<std::optional<std::size_t>> edge_map;
  std::vector<std::size_t> leg_map;
};

struct CheckResult {
  bool ok = true;
  std::string message;
};
CheckResult contraction_check(const Contraction& c, const ConeComplex& cx);
// The contact-order part of contraction_check for a single leg or edge (sign -1 when the source
// edge runs against its image).
bool leg_compatible(const ConeComplex& cx, const TypeLeg& target, const TypeLeg& source);
bool edge_compatible(const ConeComplex& cx, const TypeEdge& target, const TypeEdge& source, int sign);
// Finds maps turning (source, target) into a valid contraction, preferring leg ids.
std::optional<Contraction> find_contraction(const PuncturedType& source, const PuncturedType& target,
                                            const ConeComplex& cx, std::size_t budget = 100000);
Contraction compose(const Contraction& outer, const Contraction& inner);
Contraction identity_contraction(const PuncturedType& t);

struct Automorphism {
  std::vector<std::size_t> vertices, edges, legs;
  std::vector<bool> flips;
  bool operator==(const Automorphism&) const = default;
  auto operator<=>(const Automorphism&) const = default;
};
Automorphism compose(const Automorphism& a, const Automorphism& b);  // a ∘ b
Automorphism inverse(const Automorphism& a);
// Decoration-preserving automorphisms; legs fixed unless fix_legs is false; relative to rel
// (a contraction out of t) when given.
std::vector<Automorphism> automorphisms(const PuncturedType& t, const Contraction* rel = nullptr,
                                        bool fix_legs = true, std::size_t budget = 1000000);

// One-vertex global type with total genus, summed degrees and legs as classes at the apex.
PuncturedType class_of(const PuncturedType& t, const ConeComplex& cx);

// Equality up to the order of vertices, edges and legs (matched by id).
bool same_type(const PuncturedType& a, const PuncturedType& b);

}  // namespace puncta
