#pragma once

#include "puncta/complex.hpp"
#include "puncta/types.hpp"

#include <json.hpp>
#include <optional>

namespace puncta {

using Json = nlohmann::ordered_json;

struct FanFile {
  ConeComplex complex;
  std::optional<DegenerationMap> degeneration;
  std::optional<GlobalSections> sections;
};

// Schema violations raise Error with a JSON-pointer style path.
FanFile parse_fan(const Json& j);
Json emit_fan(const FanFile& f);
FanFile read_fan_file(const std::string& path);

Json read_json_file(const std::string& path);

// Type files reference cones by id. Arrows are positions among arrows_between and default to
// the first one.
PuncturedType parse_type(const Json& j, const ConeComplex& cx);
Json emit_type(const PuncturedType& t, const ConeComplex& cx);
PuncturedType read_type_file(const std::string& path, const ConeComplex& cx);

// {"target": type object or path relative to the file, "vertex_map", "edge_map", "leg_map"}; the
// maps may be omitted, in which case one is searched for.
Contraction parse_contraction(const Json& j, const PuncturedType& source, const ConeComplex& cx,
                              const std::string& base_dir = ".");
Contraction read_contraction_file(const std::string& path, const PuncturedType& source, const ConeComplex& cx);

// JSON helpers shared by the file formats.
const Json& require(const Json& j, const std::string& key, const std::string& path);
IVec parse_ivec(const Json& j, const std::string& path);
IMat parse_imat(const Json& j, std::size_t rows, std::size_t cols, const std::string& path);
Json to_json(const IVec& v);
Json to_json(const IMat& m);
Json to_json(const Integer& x);
Json to_json(const Rational& x);

}  // namespace puncta
