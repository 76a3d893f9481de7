#include "birat/json_io.hpp"

#include <sstream>

namespace birat {

Json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(Errc::ParseError, "expected a rational as integer or \"num/den\" string");
}

Json tower_to_json(const TowerElem& e) {
  if (e.is_rational()) return rational_to_json(e.rational_value());
  Json gens = Json::array();
  for (const auto& g : e.ctx().gens()) gens.push_back(g.str());
  Json coeffs = Json::object();
  for (size_t mask = 0; mask < e.coeffs().size(); ++mask) {
    if (e.coeffs()[mask] == 0) continue;
    std::ostringstream key;
    bool first = true;
    for (size_t i = 0; i < e.ctx().size(); ++i)
      if (mask & (size_t(1) << i)) {
        if (!first) key << ",";
        key << (i + 1);
        first = false;
      }
    coeffs[key.str()] = rational_to_string(e.coeffs()[mask]);
  }
  return Json{{"gens", gens}, {"coeffs", coeffs}};
}

TowerElem tower_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return TowerElem(rational_from_json(j));
  if (!j.is_object() || !j.contains("gens") || !j.contains("coeffs"))
    fail(Errc::ParseError, "expected a tower element object");
  std::vector<Int> gens;
  for (const auto& g : j.at("gens")) {
    if (g.is_number_integer())
      gens.emplace_back(g.get<long long>());
    else
      gens.emplace_back(Int(g.get<std::string>()));
  }
  TowerCtx ctx = TowerCtx::from_generators(gens);
  std::vector<Rational> coeffs(size_t(1) << gens.size(), Rational(0));
  for (const auto& [key, value] : j.at("coeffs").items()) {
    size_t mask = 0;
    if (!key.empty()) {
      std::istringstream is(key);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        int idx = std::stoi(tok);
        if (idx < 1 || size_t(idx) > gens.size())
          fail(Errc::ParseError, "coefficient index out of range");
        mask |= size_t(1) << (idx - 1);
      }
    }
    coeffs[mask] = rational_from_json(value);
  }
  return TowerElem(ctx, std::move(coeffs));
}

Json poly_to_json(const MultiPoly& p) {
  Json vars = Json::array();
  for (const auto& v : p.vars()) vars.push_back(v);
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exp = Json::array();
    for (int x : e) exp.push_back(x);
    terms.push_back(Json{{"exp", exp}, {"coeff", tower_to_json(c)}});
  }
  return Json{{"vars", vars}, {"terms", terms}};
}

MultiPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    fail(Errc::ParseError, "expected a polynomial object");
  std::vector<std::string> vars;
  for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
  MultiPoly p(vars);
  for (const auto& t : j.at("terms")) {
    Exps e;
    for (const auto& x : t.at("exp")) e.push_back(x.get<int>());
    p.add_term(e, tower_from_json(t.at("coeff")));
  }
  return p;
}

Json map_to_json(const RationalMap& m) {
  Json coords = Json::array();
  for (const auto& p : m.nums) coords.push_back(poly_to_json(p));
  Json out{{"source", surface_name(m.source)},
           {"target", surface_name(m.target)},
           {"coords", coords}};
  if (!m.dens.empty()) {
    Json dens = Json::array();
    for (const auto& p : m.dens) dens.push_back(poly_to_json(p));
    out["dens"] = dens;
  }
  return out;
}

RationalMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("coords"))
    fail(Errc::ParseError, "expected a rational map object");
  RationalMap m;
  m.source = surface_from_name(j.at("source").get<std::string>());
  m.target = surface_from_name(j.at("target").get<std::string>());
  for (const auto& p : j.at("coords")) m.nums.push_back(poly_from_json(p));
  if (j.contains("dens"))
    for (const auto& p : j.at("dens")) m.dens.push_back(poly_from_json(p));
  validate_map(m);
  return m;
}

Json point_to_json(const SurfacePoint& p) {
  Json arr = Json::array();
  for (const auto& c : p.coords) arr.push_back(tower_to_json(c));
  return arr;
}

SurfacePoint point_from_json(Surface s, const Json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "expected a coordinate array");
  std::vector<TowerElem> coords;
  for (const auto& c : j) coords.push_back(tower_from_json(c));
  return make_surface_point(s, std::move(coords));
}

Json rotation_to_json(const Rotation3& r) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(tower_to_json(r.at(i, j)));
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

Rotation3 rotation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) fail(Errc::ParseError, "expected a rotation object");
  std::array<TowerElem, 9> m;
  const Json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != 3) fail(Errc::ParseError, "rotation needs 3 rows");
  for (int i = 0; i < 3; ++i) {
    if (!rows[size_t(i)].is_array() || rows[size_t(i)].size() != 3)
      fail(Errc::ParseError, "rotation rows need 3 entries");
    for (int c = 0; c < 3; ++c) m[size_t(i * 3 + c)] = tower_from_json(rows[size_t(i)][size_t(c)]);
  }
  return Rotation3(m);
}

Json circle_to_json(const CircleMap& f) {
  return Json{{"num", poly_to_json(f.pn())},
              {"den", poly_to_json(f.pd())},
              {"post", Json::array({tower_to_json(f.post().first), tower_to_json(f.post().second)})}};
}

CircleMap circle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num")) fail(Errc::ParseError, "expected a circle map object");
  MultiPoly pn = poly_from_json(j.at("num"));
  MultiPoly pd = j.contains("den")
                     ? poly_from_json(j.at("den"))
                     : MultiPoly::constant({"z"}, TowerElem(1));
  std::pair<TowerElem, TowerElem> post{TowerElem(1), TowerElem(0)};
  if (j.contains("post")) {
    post.first = tower_from_json(j.at("post")[0]);
    post.second = tower_from_json(j.at("post")[1]);
  }
  return CircleMap(std::move(pn), std::move(pd), std::move(post));
}

Json twist_to_json(const TwistingMap& t) {
  return Json{{"profile", circle_to_json(t.profile)},
              {"axis", rotation_to_json(t.frame)},
              {"map", map_to_json(t.realized)}};
}

TwistingMap twist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("profile") || !j.contains("axis"))
    fail(Errc::ParseError, "expected a twisting map object");
  return twisting_map(circle_from_json(j.at("profile")), rotation_from_json(j.at("axis")));
}

Json sphere_point_to_json(const SpherePoint& p) {
  return Json{{"x", tower_to_json(p.x)}, {"y", tower_to_json(p.y)}, {"z", tower_to_json(p.z)}};
}

SpherePoint sphere_point_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 3) fail(Errc::ParseError, "sphere point needs 3 coordinates");
    return SpherePoint(tower_from_json(j[0]), tower_from_json(j[1]), tower_from_json(j[2]));
  }
  if (j.is_object() && j.contains("x") && j.contains("y") && j.contains("z"))
    return SpherePoint(tower_from_json(j.at("x")), tower_from_json(j.at("y")),
                       tower_from_json(j.at("z")));
  fail(Errc::ParseError, "expected a sphere point");
}

Json reg_function_to_json(const RegFunction& f) {
  return Json{{"num", poly_to_json(f.num)}, {"den", poly_to_json(f.den)}};
}

RegFunction reg_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    fail(Errc::ParseError, "expected a regulous function object");
  return make_reg_function(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

}  // namespace birat
