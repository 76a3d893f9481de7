#include "birat/cli.hpp"

#include <algorithm>
#include <random>

#include "birat/catalog.hpp"

namespace birat {

namespace {

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r");
  size_t b = s.find_last_not_of(" \t\n\r");
  if (a == std::string::npos) return {};
  return s.substr(a, b - a + 1);
}

// Splits "lhs,rhs" at the top-level comma (parentheses and brackets nested).
std::pair<std::string, std::string> split_top_comma(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  fail(Errc::GrammarError, "expected a top-level comma in " + s);
}

Json error_json(const Error& e) {
  return Json{{"error", errc_name(e.code())}, {"detail", e.what()}};
}

std::string poly_text(const MultiPoly& p) { return p.to_string(); }

Json maps_equal_json(const MapsEqualResult& r) {
  Json out;
  out["equal"] = r.equal;
  if (r.equal) {
    Json factors = Json::array();
    for (const auto& f : r.factors) factors.push_back(poly_text(f));
    out["factors"] = factors;
    if (!r.factors.empty()) out["factor"] = poly_text(r.factors.back());
    if (r.factor_on_rhs) out["factor_side"] = "rhs";
  } else if (r.witness) {
    out["witness"] = point_to_json(*r.witness);
  }
  return out;
}

Json handle_catalog(const Json& payload) {
  std::string name = payload.at("name").get<std::string>();
  if (name == "list") {
    Json names = Json::array();
    for (const auto& n : catalog_names()) names.push_back(n);
    return Json{{"names", names}};
  }
  return Json{{"map", map_to_json(catalog_map(name))}};
}

Json handle_apply(const Json& payload) {
  RationalMap m = payload.at("map").is_string()
                      ? parse_map_expr(payload.at("map").get<std::string>())
                      : map_from_json(payload.at("map"));
  SurfacePoint p = point_from_json(m.source, payload.at("point"));
  SurfacePoint image = evaluate(m, p);
  return Json{{"point", point_to_json(image)}, {"surface", surface_name(image.surface)}};
}

Json handle_compose(const Json& payload) {
  RationalMap result;
  if (payload.contains("expr")) {
    result = parse_map_expr(payload.at("expr").get<std::string>());
  } else {
    RationalMap outer = payload.at("outer").is_string()
                            ? parse_map_expr(payload.at("outer").get<std::string>())
                            : map_from_json(payload.at("outer"));
    RationalMap inner = payload.at("inner").is_string()
                            ? parse_map_expr(payload.at("inner").get<std::string>())
                            : map_from_json(payload.at("inner"));
    result = compose(outer, inner);
  }
  return Json{{"map", map_to_json(result)}};
}

std::pair<int, Json> handle_verify(const Json& payload, const CliOptions& options) {
  RationalMap lhs = payload.at("lhs").is_string()
                        ? parse_map_expr(payload.at("lhs").get<std::string>())
                        : map_from_json(payload.at("lhs"));
  RationalMap rhs = payload.at("rhs").is_string()
                        ? parse_map_expr(payload.at("rhs").get<std::string>())
                        : map_from_json(payload.at("rhs"));
  MapsEqualResult r = maps_equal(lhs, rhs);
  Json out = maps_equal_json(r);
  if (r.equal && options.seed != 0) {
    // randomized spot checks on top of the symbolic certificate
    std::mt19937_64 rng(options.seed);
    auto pts = sample_points(lhs.source, 64);
    std::shuffle(pts.begin(), pts.end(), rng);
    int checked = 0;
    for (const auto& p : pts) {
      if (checked >= 5) break;
      try {
        if (!points_equal(evaluate(lhs, p), evaluate(rhs, p)))
          fail(Errc::SignRefinementFailed, "spot check contradicts symbolic certificate");
        ++checked;
      } catch (const Error& e) {
        if (e.code() == Errc::Indeterminate || e.code() == Errc::DenominatorZero) continue;
        throw;
      }
    }
    out["spot_checks"] = checked;
  }
  return {r.equal ? 0 : 2, out};
}

std::pair<int, Json> handle_solve(const Json& payload, const CliOptions& options) {
  std::vector<SpherePoint> P, Q;
  for (const auto& p : payload.at("P")) P.push_back(sphere_point_from_json(p));
  for (const auto& q : payload.at("Q")) Q.push_back(sphere_point_from_json(q));
  SolveOptions sopt;
  sopt.height_cap = options.height_cap;
  if (payload.contains("height_cap")) sopt.height_cap = payload.at("height_cap").get<int>();
  SolveResult res = transitivity_solve(P, Q, sopt);

  bool hits = true;
  for (size_t j = 0; j < P.size(); ++j)
    if (!(apply_twists(res.twists, P[j]) == Q[j])) hits = false;

  Json stages = Json::array();
  bool involutions = true;
  for (const auto& original : res.twists) {
    TwistingMap t = compact_twist(original);
    stages.push_back(Json{{"axis", rotation_to_json(t.frame)},
                          {"profile", circle_to_json(t.profile)}});
    if (!certify_twist_pair_identity(twist_inverse(t), t).equal) involutions = false;
  }
  Json out{{"stages", stages},
           {"certificates", Json{{"hits", hits}, {"involutions", involutions}}}};
  return {hits && involutions ? 0 : 2, out};
}

Json handle_interp(const Json& payload) {
  std::vector<CircleNode> nodes;
  for (const auto& n : payload.at("nodes")) {
    CircleNode node;
    node.z = tower_from_json(n.at("z"));
    node.rho1 = tower_from_json(n.at("rho")[0]);
    node.rho2 = tower_from_json(n.at("rho")[1]);
    nodes.push_back(std::move(node));
  }
  CircleMap f = interpolate_circle(nodes);
  // hits are re-checked here so the CLI answer is self-certifying
  bool hits = true;
  for (const auto& n : nodes) {
    auto v = f.at(n.z);
    if (!(v.first == n.rho1 && v.second == n.rho2)) hits = false;
  }
  MultiPoly identity_check = f.num1() * f.num1() + f.num2() * f.num2() - f.den() * f.den();
  return Json{{"profile", circle_to_json(f)},
              {"checks", Json{{"hits", hits}, {"on_circle", identity_check.is_zero()}}}};
}

Json handle_invert_twist(const Json& payload) {
  TwistingMap t = twist_from_json(payload.at("twist"));
  TwistingMap inv = twist_inverse(t);
  RationalMap round = compose(inv.realized, t.realized);
  bool certified = maps_equal(round, identity_map(Surface::Sphere)).equal;
  return Json{{"twist", twist_to_json(inv)}, {"certified", certified}};
}

Json handle_dehn(const Json& payload) {
  Rational eps = rational_from_json(payload.at("eps"));
  Rational tol = rational_from_json(payload.at("tol"));
  std::vector<TowerElem> levels;
  if (payload.contains("fixed_levels"))
    for (const auto& lvl : payload.at("fixed_levels")) levels.push_back(tower_from_json(lvl));
  TwistingMap t = dehn_twist_map(levels, eps, tol);
  return Json{{"profile", circle_to_json(t.profile)},
              {"winding", winding_number(t.profile)},
              {"map", map_to_json(t.realized)}};
}

std::pair<int, Json> handle_regulous(const Json& payload, const CliOptions& options) {
  RegFunction f = payload.at("fn").is_string()
                      ? builtin_regulous(payload.at("fn").get<std::string>())
                      : reg_function_from_json(payload.at("fn"));
  std::vector<Rational> point;
  if (payload.at("point").is_string()) {
    // "a,b,c" form
    std::istringstream is(payload.at("point").get<std::string>());
    std::string tok;
    while (std::getline(is, tok, ',')) point.push_back(parse_rational(tok));
  } else {
    for (const auto& c : payload.at("point")) point.push_back(rational_from_json(c));
  }
  int pencil = options.pencil;
  if (payload.contains("pencil")) pencil = payload.at("pencil").get<int>();

  if (payload.contains("k")) {
    int k = payload.at("k").get<int>();
    KRegulousResult r = k_regulous_check(f, point, k, pencil);
    Json out;
    if (r.passed) {
      out["result"] = "pass";
      out["passes_up_to"] = r.checked_up_to;
    } else {
      out["result"] = "fail";
      out["fail_order"] = r.fail_order;
      Json dir = Json::array();
      for (const auto& d : r.fail_dir) dir.push_back(rational_to_json(d));
      out["witness"] = Json{{"direction", dir}};
    }
    return {0, out};
  }

  RegulousResult r = eval_regulous(f, point, pencil);
  Json out;
  switch (r.kind) {
    case RegulousResult::Kind::Value:
      out["result"] = "value";
      out["value"] = rational_to_json(r.value);
      out["pencil_certified"] = r.pencil_certified;
      return {0, out};
    case RegulousResult::Kind::NotContinuous: {
      out["result"] = "not-continuous";
      Json witness;
      Json d1 = Json::array(), d2 = Json::array();
      for (const auto& d : r.dir1) d1.push_back(rational_to_json(d));
      for (const auto& d : r.dir2) d2.push_back(rational_to_json(d));
      witness["dir1"] = d1;
      witness["dir2"] = d2;
      witness["v1"] = rational_to_json(r.v1);
      if (r.v2_infinite)
        witness["v2"] = "infinite";
      else
        witness["v2"] = rational_to_json(r.v2);
      out["witness"] = witness;
      return {2, out};
    }
    case RegulousResult::Kind::Undetermined:
      out["result"] = "undetermined";
      return {2, out};
  }
  return {3, Json{{"error", "ParseError"}, {"detail", "unreachable"}}};
}

}  // namespace

RationalMap parse_map_expr(const std::string& raw) {
  std::string expr = trimmed(raw);
  if (expr.empty()) fail(Errc::GrammarError, "empty map expression");
  if (expr.front() == '{') {
    Json j = Json::parse(expr, nullptr, false);
    if (j.is_discarded()) fail(Errc::GrammarError, "bad inline JSON map");
    return map_from_json(j);
  }
  if (expr.rfind("compose(", 0) == 0) {
    if (expr.back() != ')') fail(Errc::GrammarError, "unbalanced compose(...)");
    std::string inner = expr.substr(8, expr.size() - 9);
    auto [lhs, rhs] = split_top_comma(inner);
    RationalMap g = parse_map_expr(lhs);
    RationalMap f = parse_map_expr(rhs);
    return compose(g, f);
  }
  if (expr.rfind("id:", 0) == 0) return identity_map(surface_from_name(trimmed(expr.substr(3))));
  return catalog_map(expr);
}

RunResult run_request(const Json& request, const CliOptions& options) {
  try {
    if (!request.is_object() || !request.contains("command"))
      fail(Errc::ParseError, "request needs a \"command\" field");
    std::string command = request.at("command").get<std::string>();
    Json payload = request.contains("payload") ? request.at("payload") : Json::object();

    if (command == "catalog") return {0, handle_catalog(payload)};
    if (command == "apply") return {0, handle_apply(payload)};
    if (command == "compose") return {0, handle_compose(payload)};
    if (command == "verify") {
      auto [code, out] = handle_verify(payload, options);
      return {code, out};
    }
    if (command == "invert-twist") return {0, handle_invert_twist(payload)};
    if (command == "solve") {
      auto [code, out] = handle_solve(payload, options);
      return {code, out};
    }
    if (command == "interp-circle") return {0, handle_interp(payload)};
    if (command == "dehn") return {0, handle_dehn(payload)};
    if (command == "regulous-eval") {
      auto [code, out] = handle_regulous(payload, options);
      return {code, out};
    }
    fail(Errc::UnknownName, "unknown command " + command);
  } catch (const Error& e) {
    return {3, error_json(e)};
  } catch (const Json::exception& e) {
    return {3, Json{{"error", "ParseError"}, {"detail", e.what()}}};
  } catch (const std::exception& e) {
    return {3, Json{{"error", "ParseError"}, {"detail", e.what()}}};
  }
}

}  // namespace birat
