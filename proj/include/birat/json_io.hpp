#pragma once

#include <json.hpp>

#include "birat/circle_map.hpp"
#include "birat/regulous.hpp"
#include "birat/surface_map.hpp"
#include "birat/twist.hpp"

namespace birat {

using Json = nlohmann::json;

// Exact encodings: rationals render as "num/den" strings (integers as "n");
// parsers accept JSON integers and strings in both forms.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"gens":[g...], "coeffs":{"<sorted 1-based indices>": "num/den", ...}};
// rational elements collapse to their plain string form.
Json tower_to_json(const TowerElem& e);
TowerElem tower_from_json(const Json& j);

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

Json map_to_json(const RationalMap& m);
RationalMap map_from_json(const Json& j);

Json point_to_json(const SurfacePoint& p);
SurfacePoint point_from_json(Surface s, const Json& j);

Json rotation_to_json(const Rotation3& r);
Rotation3 rotation_from_json(const Json& j);

Json circle_to_json(const CircleMap& f);
CircleMap circle_from_json(const Json& j);

Json twist_to_json(const TwistingMap& t);
TwistingMap twist_from_json(const Json& j);

Json sphere_point_to_json(const SpherePoint& p);
SpherePoint sphere_point_from_json(const Json& j);

Json reg_function_to_json(const RegFunction& f);
RegFunction reg_function_from_json(const Json& j);

}  // namespace birat
