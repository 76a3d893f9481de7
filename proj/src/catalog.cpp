#include "birat/catalog.hpp"

#include <sstream>

namespace birat {

namespace {

MultiPoly var(Surface s, const std::string& name) {
  return MultiPoly::variable(surface_vars(s), name);
}

MultiPoly one(Surface s) { return MultiPoly::constant(surface_vars(s), TowerElem(1)); }

RationalMap projective_map(Surface source, Surface target, std::vector<MultiPoly> coords) {
  RationalMap m;
  m.source = source;
  m.target = target;
  m.nums = std::move(coords);
  validate_map(m);
  return m;
}

}  // namespace

BlowupChartPoint::BlowupChartPoint(TowerElem bx, TowerElem by, TowerElem du, TowerElem dv)
    : x(std::move(bx)), y(std::move(by)), u(std::move(du)), v(std::move(dv)) {
  if (u.is_zero() && v.is_zero()) fail(Errc::InvalidPoint, "zero direction");
  if (!(u * y - v * x).is_zero()) fail(Errc::InvalidPoint, "incidence u*y = v*x violated");
}

SurfacePoint BlowupChartPoint::as_point() const {
  return make_surface_point(Surface::BlowupChart, {x, y, u, v});
}

std::pair<RationalMap, RationalMap> stereographic_north() {
  Surface Q = Surface::Quadric;
  MultiPoly w = var(Q, "w"), x = var(Q, "x"), y = var(Q, "y"), z = var(Q, "z");
  RationalMap pi = projective_map(Q, Surface::P2, {x, y, w - z});

  Surface P = Surface::P2;
  MultiPoly px = var(P, "x"), py = var(P, "y"), pz = var(P, "z");
  RationalMap pi_inv = projective_map(
      P, Q, {px * px + py * py + pz * pz, MultiPoly::constant(surface_vars(P), TowerElem(2)) * px * pz,
             MultiPoly::constant(surface_vars(P), TowerElem(2)) * py * pz, px * px + py * py - pz * pz});
  return {pi, pi_inv};
}

RationalMap sigma0() {
  Surface P = Surface::P2;
  MultiPoly x = var(P, "x"), y = var(P, "y"), z = var(P, "z");
  return projective_map(P, P, {y * z, x * z, x * y});
}

RationalMap sigma1() {
  Surface P = Surface::P2;
  MultiPoly x = var(P, "x"), y = var(P, "y"), z = var(P, "z");
  return projective_map(P, P, {y * y + z * z, x * y, x * z});
}

RationalMap tau0() {
  Surface T = Surface::P1xP1;
  MultiPoly x0 = var(T, "x0"), x1 = var(T, "x1"), y0 = var(T, "y0"), y1 = var(T, "y1");
  return projective_map(T, T, {x0, x1, x0 * y0 + x1 * y1, x1 * y0 - x0 * y1});
}

RationalMap e_invol() {
  Surface T = Surface::P1xP1;
  MultiPoly x0 = var(T, "x0"), x1 = var(T, "x1"), y0 = var(T, "y0"), y1 = var(T, "y1");
  return projective_map(T, T, {x0, x1, x0 * y1, x1 * y0});
}

RationalMap monomial_torus(const std::array<long long, 4>& m) {
  long long det = m[0] * m[3] - m[1] * m[2];
  if (det != 1 && det != -1) fail(Errc::NotUnimodular, "matrix determinant must be +-1");
  Surface T = Surface::P1xP1;
  auto vars = surface_vars(T);
  // Affine torus coordinates s = x1/x0, t = y1/y0; row (a,b) produces the
  // factor [x0^{a+} x1^{a-} y0^{b+} y1^{b-} : x1^{a+} x0^{a-} y1^{b+} y0^{b-}]
  // so that the ratio equals s^a t^b.
  auto factor = [&](long long a, long long b, MultiPoly& c0, MultiPoly& c1) {
    auto pos = [](long long t) { return t > 0 ? int(t) : 0; };
    auto neg = [](long long t) { return t < 0 ? int(-t) : 0; };
    Exps e0 = {pos(a), neg(a), pos(b), neg(b)};
    Exps e1 = {neg(a), pos(a), neg(b), pos(b)};
    c0 = MultiPoly::monomial(vars, e0, TowerElem(1));
    c1 = MultiPoly::monomial(vars, e1, TowerElem(1));
  };
  MultiPoly X0, X1, Y0, Y1;
  factor(m[0], m[1], X0, X1);
  factor(m[2], m[3], Y0, Y1);
  return projective_map(T, T, {X0, X1, Y0, Y1});
}

BlowupCharts blowup_chart_maps() {
  Surface B = Surface::BlowupChart;
  MultiPoly bx = var(B, "x"), by = var(B, "y"), bu = var(B, "u"), bv = var(B, "v");

  BlowupCharts charts;
  // phi0: ((x,y),[u:v]) -> (x, v/u)
  charts.phi0.source = B;
  charts.phi0.target = Surface::A2;
  charts.phi0.nums = {bx, bv};
  charts.phi0.dens = {one(B), bu};
  validate_map(charts.phi0);

  // phi1: ((x,y),[u:v]) -> (x, u/v), as printed
  charts.phi1.source = B;
  charts.phi1.target = Surface::A2;
  charts.phi1.nums = {bx, bu};
  charts.phi1.dens = {one(B), bv};
  validate_map(charts.phi1);

  // projection to the base
  charts.proj.source = B;
  charts.proj.target = Surface::A2;
  charts.proj.nums = {bx, by};
  charts.proj.dens = {one(B), one(B)};
  validate_map(charts.proj);

  Surface A = Surface::A2;
  MultiPoly ax = var(A, "x"), aw = var(A, "y");
  // phi0^{-1}: (x,w) -> ((x, x*w), [1:w])
  charts.phi0_inv.source = A;
  charts.phi0_inv.target = B;
  charts.phi0_inv.nums = {ax, ax * aw, one(A), aw};
  charts.phi0_inv.dens = {one(A), one(A), one(A), one(A)};
  validate_map(charts.phi0_inv);

  // phi1^{-1}: (x,s) -> ((x, x/s), [s:1]) on the overlap s != 0
  charts.phi1_inv.source = A;
  charts.phi1_inv.target = B;
  charts.phi1_inv.nums = {ax, ax, aw, one(A)};
  charts.phi1_inv.dens = {one(A), aw, one(A), one(A)};
  validate_map(charts.phi1_inv);

  return charts;
}

RationalMap catalog_map(const std::string& name) {
  if (name == "pi_N") return stereographic_north().first;
  if (name == "pi_N_inv") return stereographic_north().second;
  if (name == "sigma0") return sigma0();
  if (name == "sigma1") return sigma1();
  if (name == "tau0") return tau0();
  if (name == "e") return e_invol();
  if (name == "blowup_phi0") return blowup_chart_maps().phi0;
  if (name == "blowup_phi1") return blowup_chart_maps().phi1;
  if (name == "blowup_proj") return blowup_chart_maps().proj;
  if (name.rfind("monomial:", 0) == 0) {
    std::string rest = name.substr(9);
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      fail(Errc::GrammarError, "expected monomial:[a,b,c,d]");
    std::istringstream is(rest.substr(1, rest.size() - 2));
    std::array<long long, 4> m{};
    char sep = 0;
    for (int i = 0; i < 4; ++i) {
      if (!(is >> m[size_t(i)])) fail(Errc::GrammarError, "expected monomial:[a,b,c,d]");
      if (i < 3 && !(is >> sep)) fail(Errc::GrammarError, "expected monomial:[a,b,c,d]");
    }
    return monomial_torus(m);
  }
  fail(Errc::UnknownName, "unknown catalog map " + name);
}

std::vector<std::string> catalog_names() {
  return {"pi_N",   "pi_N_inv", "sigma0",      "sigma1",      "tau0",
          "e",      "monomial:[a,b,c,d]",      "blowup_phi0", "blowup_phi1",
          "blowup_proj"};
}

}  // namespace birat
