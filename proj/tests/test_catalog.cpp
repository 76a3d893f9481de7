#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birat/catalog.hpp"

using namespace birat;

TEST_CASE("pi_N evaluates as printed") {
  auto [pi, pi_inv] = stereographic_north();
  // formal substitution at the printed P^3 tuple
  SurfacePoint p =
      make_surface_point(Surface::Quadric, {TowerElem(2), TowerElem(1), TowerElem(0), TowerElem(1)});
  SurfacePoint im = evaluate(pi, p);
  CHECK(points_equal(im,
                     make_surface_point(Surface::P2, {TowerElem(1), TowerElem(0), TowerElem(1)})));

  // genuine quadric point [5:3:0:4] round trips through the plane
  SurfacePoint q =
      make_surface_point(Surface::Quadric, {TowerElem(5), TowerElem(3), TowerElem(0), TowerElem(4)});
  SurfacePoint back = evaluate(pi_inv, evaluate(pi, q));
  CHECK(points_equal(back, q));
}

TEST_CASE("pi_N and its inverse are mutually inverse in both orders") {
  auto [pi, pi_inv] = stereographic_north();
  auto r1 = maps_equal(compose(pi_inv, pi), identity_map(Surface::Quadric));
  auto r2 = maps_equal(compose(pi, pi_inv), identity_map(Surface::P2));
  CHECK(r1.equal);
  CHECK(r2.equal);
}

TEST_CASE("sigma0 base points are exactly the three coordinate points") {
  RationalMap s0 = sigma0();
  std::vector<SurfacePoint> grid;
  for (int a : {0, 1})
    for (int b : {0, 1})
      for (int c : {0, 1}) {
        if (a == 0 && b == 0 && c == 0) continue;
        grid.push_back(make_surface_point(Surface::P2, {TowerElem(a), TowerElem(b), TowerElem(c)}));
      }
  int indeterminate = 0;
  for (const auto& p : grid) {
    int zero_coords = 0;
    for (const auto& c : p.coords)
      if (c.is_zero()) ++zero_coords;
    bool is_coordinate_point = zero_coords == 2;
    bool threw = false;
    try {
      (void)evaluate(s0, p);
    } catch (const Error& e) {
      threw = e.code() == Errc::Indeterminate;
    }
    CHECK(threw == is_coordinate_point);
    if (threw) ++indeterminate;
  }
  CHECK(indeterminate == 3);
}

TEST_CASE("sigma1 real base point is only [1:0:0]") {
  RationalMap s1 = sigma1();
  // y^2 + z^2 = xy = xz = 0 over a real field forces y = z = 0.
  CHECK_THROWS_AS(
      evaluate(s1, make_surface_point(Surface::P2, {TowerElem(1), TowerElem(0), TowerElem(0)})),
      Error);
  for (const auto& p : sample_points(Surface::P2, 120)) {
    bool coord_point = p.coords[1].is_zero() && p.coords[2].is_zero();
    if (coord_point) continue;
    CHECK_NOTHROW(evaluate(s1, p));
  }
}

TEST_CASE("tau0 and e are involutions with the printed factors") {
  auto tv = surface_vars(Surface::P1xP1);
  MultiPoly x0 = MultiPoly::variable(tv, "x0");
  MultiPoly x1 = MultiPoly::variable(tv, "x1");

  auto rt = maps_equal(compose(tau0(), tau0()), identity_map(Surface::P1xP1));
  REQUIRE(rt.equal);
  REQUIRE(rt.factors.size() == 2);
  CHECK(rt.factors[0] == MultiPoly::constant(tv, TowerElem(1)));
  CHECK(rt.factors[1] == x0 * x0 + x1 * x1);

  auto re = maps_equal(compose(e_invol(), e_invol()), identity_map(Surface::P1xP1));
  REQUIRE(re.equal);
  REQUIRE(re.factors.size() == 2);
  CHECK(re.factors[0] == MultiPoly::constant(tv, TowerElem(1)));
  CHECK(re.factors[1] == x0 * x1);
}

TEST_CASE("e base locus from the printed formula") {
  // [x0 y1 : x1 y0] vanishes iff (x0 = 0 and y0 = 0) or (x1 = 0 and y1 = 0).
  RationalMap e = e_invol();
  auto point = [](int a, int b, int c, int d) {
    return make_surface_point(Surface::P1xP1,
                              {TowerElem(a), TowerElem(b), TowerElem(c), TowerElem(d)});
  };
  CHECK_THROWS_AS(evaluate(e, point(0, 1, 0, 1)), Error);
  CHECK_THROWS_AS(evaluate(e, point(1, 0, 1, 0)), Error);
  CHECK_NOTHROW(evaluate(e, point(0, 1, 1, 0)));
  CHECK_NOTHROW(evaluate(e, point(1, 0, 0, 1)));
  CHECK_NOTHROW(evaluate(e, point(1, 1, 1, 2)));
}

TEST_CASE("monomial torus maps") {
  std::array<long long, 4> id{1, 0, 0, 1};
  auto rid = maps_equal(monomial_torus(id), identity_map(Surface::P1xP1));
  CHECK(rid.equal);

  // factor swap
  std::array<long long, 4> swap{0, 1, 1, 0};
  RationalMap sw = monomial_torus(swap);
  SurfacePoint p = make_surface_point(Surface::P1xP1,
                                      {TowerElem(1), TowerElem(2), TowerElem(1), TowerElem(3)});
  SurfacePoint im = evaluate(sw, p);
  CHECK(points_equal(im, make_surface_point(Surface::P1xP1, {TowerElem(1), TowerElem(3),
                                                             TowerElem(1), TowerElem(2)})));

  // m * m^{-1} ~ identity for a shear
  std::array<long long, 4> shear{1, 1, 0, 1};
  std::array<long long, 4> shear_inv{1, -1, 0, 1};
  auto r = maps_equal(compose(monomial_torus(shear), monomial_torus(shear_inv)),
                      identity_map(Surface::P1xP1));
  CHECK(r.equal);

  CHECK_THROWS_AS(monomial_torus({2, 0, 0, 1}), Error);
}

TEST_CASE("monomial torus group law on random unimodular pairs") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> small(-2, 2);
  auto random_unimodular = [&]() {
    // random product of elementary shears and swaps stays unimodular
    std::array<long long, 4> m{1, 0, 0, 1};
    for (int step = 0; step < 3; ++step) {
      long long k = small(rng);
      std::array<long long, 4> s = (step % 2 == 0) ? std::array<long long, 4>{1, k, 0, 1}
                                                   : std::array<long long, 4>{1, 0, k, 1};
      std::array<long long, 4> out;
      out[0] = m[0] * s[0] + m[1] * s[2];
      out[1] = m[0] * s[1] + m[1] * s[3];
      out[2] = m[2] * s[0] + m[3] * s[2];
      out[3] = m[2] * s[1] + m[3] * s[3];
      m = out;
    }
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_unimodular();
    auto b = random_unimodular();
    std::array<long long, 4> ab;
    ab[0] = a[0] * b[0] + a[1] * b[2];
    ab[1] = a[0] * b[1] + a[1] * b[3];
    ab[2] = a[2] * b[0] + a[3] * b[2];
    ab[3] = a[2] * b[1] + a[3] * b[3];
    auto res = maps_equal(compose(monomial_torus(a), monomial_torus(b)), monomial_torus(ab));
    CHECK(res.equal);
  }
}

TEST_CASE("blow-up chart points and maps") {
  // incidence
  CHECK_NOTHROW(BlowupChartPoint(TowerElem(1), TowerElem(2), TowerElem(1), TowerElem(2)));
  CHECK_THROWS_AS(BlowupChartPoint(TowerElem(1), TowerElem(2), TowerElem(2), TowerElem(1)), Error);
  // exceptional fiber: any direction over the origin
  CHECK_NOTHROW(BlowupChartPoint(TowerElem(0), TowerElem(0), TowerElem(3), TowerElem(5)));

  auto charts = blowup_chart_maps();

  BlowupChartPoint p(TowerElem(1), TowerElem(2), TowerElem(1), TowerElem(2));
  SurfacePoint im = evaluate(charts.phi0, p.as_point());
  CHECK(im.coords[0] == TowerElem(1));
  CHECK(im.coords[1] == TowerElem(2));

  // phi0 with u = 0 hits the denominator
  BlowupChartPoint exc(TowerElem(0), TowerElem(0), TowerElem(0), TowerElem(1));
  CHECK_THROWS_AS(evaluate(charts.phi0, exc.as_point()), Error);

  // exceptional fiber maps to the origin under the projection
  BlowupChartPoint exc2(TowerElem(0), TowerElem(0), TowerElem(3), TowerElem(5));
  SurfacePoint origin = evaluate(charts.proj, exc2.as_point());
  CHECK(origin.coords[0].is_zero());
  CHECK(origin.coords[1].is_zero());

  // chart transition phi1 o phi0^{-1} is (x, w) -> (x, 1/w)
  RationalMap trans = compose(charts.phi1, charts.phi0_inv);
  auto av = surface_vars(Surface::A2);
  MultiPoly ax = MultiPoly::variable(av, "x");
  MultiPoly aw = MultiPoly::variable(av, "y");
  MultiPoly a1 = MultiPoly::constant(av, TowerElem(1));
  RationalMap expect{Surface::A2, Surface::A2, {ax, a1}, {a1, aw}};
  CHECK(maps_equal(trans, expect).equal);

  // and the reverse transition matches too
  RationalMap trans2 = compose(charts.phi0, charts.phi1_inv);
  CHECK(maps_equal(trans2, expect).equal);

  // phi0^{-1} lands on the incidence surface
  SurfacePoint chart_pt = make_surface_point(Surface::A2, {TowerElem(3), TowerElem(7)});
  SurfacePoint lifted = evaluate(charts.phi0_inv, chart_pt);
  CHECK(lifted.surface == Surface::BlowupChart);
}

TEST_CASE("catalog registry resolves names") {
  for (const char* name : {"pi_N", "pi_N_inv", "sigma0", "sigma1", "tau0", "e", "blowup_phi0",
                           "blowup_phi1", "blowup_proj"})
    CHECK_NOTHROW(catalog_map(name));
  CHECK_NOTHROW(catalog_map("monomial:[1,1,0,1]"));
  CHECK_THROWS_AS(catalog_map("nope"), Error);
  CHECK_THROWS_AS(catalog_map("monomial:[1,1,0]"), Error);
}
