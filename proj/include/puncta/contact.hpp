#pragma once

#include "puncta/complex.hpp"
#include "puncta/ideal.hpp"

namespace puncta {

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);

// A representative of a global contact order: u in N of the target of a star object.
struct OrbitNode {
  std::size_t object;  // position in star.objects
  IVec u;
  auto operator<=>(const OrbitNode&) const = default;
};

struct ContactClass {
  std::size_t base = 0;
  Star star;
  std::vector<OrbitNode> orbit;  // sorted
  Tri finite_monodromy = Tri::Unknown;
  // False as soon as some star object carries two representatives.
  Tri monodromy_free = Tri::Unknown;
  std::vector<IVec> representatives(std::size_t object) const;
};

// Closure of the seed under push-forward and integral pull-back along star morphisms.
ContactClass contact_orbit(const ConeComplex& cx, std::size_t sigma, const OrbitNode& seed,
                           std::size_t budget = 10000);
// Seed given by a target cone; uses the first star object landing there.
ContactClass contact_orbit(const ConeComplex& cx, std::size_t sigma, std::size_t target_cone, const IVec& u,
                           std::size_t budget = 10000);
// Raises "monodromy unknown" when the orbit was truncated without exhibiting monodromy.
bool monodromy_free(const ContactClass& cls);

// Per star object: stalk monoid P, representatives, I_ū, I_ū + J^σ and the reduced support.
struct StratumData {
  std::size_t object = 0;
  ToricMonoid monoid;
  std::vector<IVec> reps;
  MonoidIdeal ideal_u;
  MonoidIdeal ideal;
  std::vector<Cone> reduced_support;
};
struct EvaluationStratum {
  std::vector<StratumData> strata;
};
EvaluationStratum evaluation_stratum(const ConeComplex& cx, const ContactClass& cls);

// The same data for a single stalk P and representatives u (functionals on P^gp).
struct LocalStratum {
  MonoidIdeal ideal;
  std::vector<Cone> reduced_support;  // faces τ of the dual cone with some u in τ^gp
};
LocalStratum local_evaluation_stratum(const ToricMonoid& p, const std::vector<IVec>& reps);

struct ContactComponent {
  // Pairs (cone, u) with the cone minimal such that u lies in its group.
  std::vector<std::pair<std::size_t, IVec>> pieces;
  std::size_t nodes = 0;
  bool complete = true;
};
ContactComponent connected_contact_component(const ConeComplex& cx, std::size_t cone, const IVec& u,
                                             std::size_t budget = 10000);

}  // namespace puncta
