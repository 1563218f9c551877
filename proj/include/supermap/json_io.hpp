#pragma once

#include "supermap/geometry.hpp"
#include "supermap/jetcalc.hpp"
#include "supermap/mapspace.hpp"
#include "supermap/morphism.hpp"

#include <json.hpp>

#include <string>

namespace supermap::io {

using json = nlohmann::ordered_json;

/// Parses a file or string; syntax errors become SchemaError with line:column.
json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& origin = "<input>");

json to_json(const Rational& r);
json to_json(const Grassmann& g);
json to_json(const GrassmannD& g);
json to_json(const GrassmannHom& h);
json to_json(const Polynomial& f);
json to_json(const SuperFunction& f);
json to_json(const SuperMorphism& m);
json to_json(const MappingPoint& m);
json to_json(const SuperPoint& x);
json to_json(const ModelPoint& x);
json to_json(const JetMap& t);
json to_json(const PointPair& pp);
json to_json(const OrderVerdict& v);
json to_json(const SmoothnessVerdict& v);
json to_json(const TransitionData& t);

// Readers throw SchemaError naming the offending JSON path.
Rational rational_from_json(const json& j, const std::string& path = "$");
Grassmann grassmann_from_json(const json& j, const std::string& path = "$");
GrassmannHom hom_from_json(const json& j, const std::string& path = "$");
Polynomial polynomial_from_json(const json& j, const std::string& path = "$");
SuperFunction superfunction_from_json(const json& j, const std::string& path = "$");
SuperMorphism morphism_from_json(const json& j, const std::string& path = "$");
MappingPoint mapping_point_from_json(const json& j, const std::string& path = "$");
SuperPoint superpoint_from_json(const json& j, const std::string& path = "$");
std::vector<Rational> rational_vector_from_json(const json& j, const std::string& path = "$");
std::vector<double> double_vector_from_json(const json& j, const std::string& path = "$");

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace supermap::io
