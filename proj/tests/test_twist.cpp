#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birat/catalog.hpp"
#include "birat/twist.hpp"

using namespace birat;

namespace {

const std::vector<std::string> zv = {"z"};

SpherePoint pt(const Rational& x, const Rational& y, const Rational& z) {
  return SpherePoint(TowerElem(x), TowerElem(y), TowerElem(z));
}

CircleNode node(const Rational& z, const Rational& r1, const Rational& r2) {
  return CircleNode{TowerElem(z), TowerElem(r1), TowerElem(r2)};
}

bool circle_identity_on_sphere(const TwistingMap& t) {
  RationalMap comp = compose(twist_inverse(t).realized, t.realized);
  return maps_equal(comp, identity_map(Surface::Sphere)).equal;
}

}  // namespace

TEST_CASE("interpolate_circle line example") {
  // nodes [(0,(0,1)), (1/2,(1,0))]: half-angle values 1 and 0, p(z) = 1 - 2z
  auto f = interpolate_circle({node(Rational(0), 0, 1), node(Rational(1, 2), 1, 0)});
  MultiPoly expect = MultiPoly::constant(zv, TowerElem(1)) -
                     MultiPoly::variable(zv, "z").scaled(TowerElem(2));
  CHECK(f.pn() == expect);
  auto v0 = f.at(TowerElem(0));
  CHECK(v0.first == TowerElem(0));
  CHECK(v0.second == TowerElem(1));
  auto v1 = f.at(TowerElem(Rational(1, 2)));
  CHECK(v1.first == TowerElem(1));
  CHECK(v1.second == TowerElem(0));
}

TEST_CASE("interpolate_circle constant profile") {
  auto f = interpolate_circle({node(Rational(0), 1, 0)});
  CHECK(f.pn().is_zero());
  auto v = f.at(TowerElem(Rational(1, 3)));
  CHECK(v.first == TowerElem(1));
  CHECK(v.second == TowerElem(0));
}

TEST_CASE("interpolate_circle antipode fallback with post-rotation") {
  // targets (-1,0) and (1,0): flip alone cannot work; a post-rotation kicks in
  auto f = interpolate_circle(
      {node(Rational(-1, 2), -1, 0), node(Rational(1, 2), 1, 0)});
  auto va = f.at(TowerElem(Rational(-1, 2)));
  CHECK(va.first == TowerElem(-1));
  CHECK(va.second == TowerElem(0));
  auto vb = f.at(TowerElem(Rational(1, 2)));
  CHECK(vb.first == TowerElem(1));
  CHECK(vb.second == TowerElem(0));
}

TEST_CASE("interpolate_circle error cases") {
  CHECK_THROWS_AS(interpolate_circle({node(Rational(0), 0, 1), node(Rational(0), 1, 0)}), Error);
  CHECK_THROWS_AS(interpolate_circle({node(Rational(0), Rational(1, 2), Rational(1, 2))}), Error);
  CHECK_THROWS_AS(interpolate_circle({node(Rational(2), 1, 0)}), Error);
}

TEST_CASE("circle map invariant f1^2+f2^2 = 1 symbolically") {
  auto check_identity = [](const CircleMap& f) {
    MultiPoly lhs = f.num1() * f.num1() + f.num2() * f.num2() - f.den() * f.den();
    CHECK(lhs.is_zero());
  };
  check_identity(CircleMap());
  check_identity(interpolate_circle({node(Rational(0), 0, 1), node(Rational(1, 2), 1, 0)}));
  check_identity(interpolate_circle({node(Rational(-1, 2), -1, 0), node(Rational(1, 2), 1, 0)}));
  check_identity(interpolate_circle({node(Rational(0), Rational(3, 5), Rational(4, 5)),
                                     node(Rational(1, 3), Rational(-5, 13), Rational(12, 13)),
                                     node(Rational(-2, 3), 0, -1)}));
}

TEST_CASE("twisting map constants") {
  // identity profile gives the identity map
  TwistingMap tid = twisting_map(CircleMap(), Rotation3::identity());
  CHECK(maps_equal(tid.realized, identity_map(Surface::Sphere)).equal);

  // constant (0,1): quarter turn (x,y,z) -> (-y,x,z)
  TwistingMap tq = twisting_map(CircleMap::constant(TowerElem(0), TowerElem(1)),
                                Rotation3::identity());
  SpherePoint p = pt(1, 0, 0);
  SpherePoint im = apply_twists({tq}, p);
  CHECK(im == pt(0, 1, 0));

  auto vars = surface_vars(Surface::Sphere);
  MultiPoly mx = MultiPoly::variable(vars, "x");
  MultiPoly my = MultiPoly::variable(vars, "y");
  MultiPoly mz = MultiPoly::variable(vars, "z");
  MultiPoly one = MultiPoly::constant(vars, TowerElem(1));
  RationalMap quarter{Surface::Sphere, Surface::Sphere, {-my, mx, mz}, {one, one, one}};
  CHECK(maps_equal(tq.realized, quarter).equal);
}

TEST_CASE("twisting map from interpolated profile evaluates as stated") {
  auto f = interpolate_circle({node(Rational(0), 0, 1), node(Rational(1, 2), 1, 0)});
  TwistingMap t = twisting_map(f, Rotation3::identity());
  // at (1,0,0): level 0, f(0) = (0,1) rotates (1,0) to (0,1)
  CHECK(apply_twists({t}, pt(1, 0, 0)) == pt(0, 1, 0));
  // at level 1/2 the profile is the identity rotation; the circle there needs
  // sqrt(3)/2
  TowerCtx ctx;
  auto r3 = adjoin_sqrt(ctx, Rational(3));
  SpherePoint pinned(r3.root / TowerElem(2), TowerElem(0), TowerElem(Rational(1, 2)));
  CHECK(apply_twists({t}, pinned) == pinned);
}

TEST_CASE("twist inverse certificates") {
  // constant (0,1) inverts to (0,-1)
  TwistingMap tq = twisting_map(CircleMap::constant(TowerElem(0), TowerElem(1)),
                                Rotation3::identity());
  TwistingMap tqi = twist_inverse(tq);
  auto v = tqi.profile.at(TowerElem(0));
  CHECK(v.first == TowerElem(0));
  CHECK(v.second == TowerElem(-1));
  CHECK(circle_identity_on_sphere(tq));

  auto f = interpolate_circle({node(Rational(0), 0, 1), node(Rational(1, 2), 1, 0)});
  TwistingMap t = twisting_map(f, cayley_rotation(Rational(1, 2), Rational(-1, 3), Rational(1)));
  CHECK(circle_identity_on_sphere(t));
}

TEST_CASE("realized twisting maps preserve the sphere ideal") {
  // the full trivariate certificate: sum(num_i^2) - den^2 in <x^2+y^2+z^2-1>
  auto check = [](const TwistingMap& t) {
    MultiPoly cert = t.realized.nums[0] * t.realized.nums[0] +
                     t.realized.nums[1] * t.realized.nums[1] +
                     t.realized.nums[2] * t.realized.nums[2] -
                     t.realized.dens[0] * t.realized.dens[0];
    CHECK(reduce_mod_sphere(cert).is_zero());
  };
  check(twisting_map(CircleMap::constant(TowerElem(0), TowerElem(1)), Rotation3::identity()));
  auto f = interpolate_circle({node(Rational(0), 0, 1), node(Rational(1, 2), 1, 0)});
  check(twisting_map(f, Rotation3::identity()));
  check(twisting_map(f, cayley_rotation(Rational(1, 2), Rational(-1, 3), Rational(1))));
  // and on solver output, including tower coefficients
  auto res = transitivity_solve({pt(1, 0, 0), pt(0, 0, 1)}, {pt(0, 1, 0), pt(0, 0, -1)});
  for (const auto& t : res.twists) check(t);
  // random sphere points land exactly on the sphere through a twist
  auto t = twisting_map(f, cayley_rotation(Rational(1, 3), Rational(0), Rational(-1)));
  for (const auto& p : sample_points(Surface::Sphere, 100)) {
    SurfacePoint im = evaluate(t.realized, p);
    TowerElem norm = im.coords[0] * im.coords[0] + im.coords[1] * im.coords[1] +
                     im.coords[2] * im.coords[2];
    CHECK(norm == TowerElem(1));
  }
}

TEST_CASE("twisting maps fix the frame poles") {
  auto f = interpolate_circle({node(Rational(1, 4), 0, 1), node(Rational(-1, 3), 1, 0)});
  Rotation3 frame = cayley_rotation(Rational(1, 3), Rational(2), Rational(-1, 2));
  TwistingMap t = twisting_map(f, frame);
  // poles: frame^{-1} e_z = frame^T e_z = third row of frame
  SpherePoint north(frame.at(2, 0), frame.at(2, 1), frame.at(2, 2));
  SpherePoint south(-frame.at(2, 0), -frame.at(2, 1), -frame.at(2, 2));
  CHECK(apply_twists({t}, north) == north);
  CHECK(apply_twists({t}, south) == south);
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(CircleMap()) == 0);
  CHECK(winding_number(CircleMap::constant(TowerElem(0), TowerElem(1))) == 0);

  // p(z) = z / (z^2 - 1/16) has poles at +-1/4 inside the interval
  MultiPoly zp = MultiPoly::variable(zv, "z");
  MultiPoly pd = zp * zp - MultiPoly::constant(zv, TowerElem(Rational(1, 16)));
  CircleMap loop(zp, pd, {TowerElem(1), TowerElem(0)});
  int w = winding_number(loop);
  CHECK((w == 1 || w == -1));

  // Doubling is additive when the endpoints stay near (1,0), where the
  // shorter-arc closure is stable: p = (z^2 - 1/4) / (8z).
  MultiPoly small_pn = (zp * zp - MultiPoly::constant(zv, TowerElem(Rational(1, 4))))
                           .scaled(TowerElem(Rational(1, 8)));
  CircleMap tight(small_pn, zp, {TowerElem(1), TowerElem(0)});
  int wt = winding_number(tight);
  CHECK((wt == 1 || wt == -1));
  CircleMap doubled = circle_mul(tight, tight);
  CHECK(winding_number(doubled) == 2 * wt);
}

TEST_CASE("transitivity n=1 same level uses a single twist") {
  auto res = transitivity_solve({pt(1, 0, 0)}, {pt(0, 1, 0)});
  CHECK(res.twists.size() == 1);
  // constant profile (0,1) about e_z
  auto v = res.twists[0].profile.at(TowerElem(0));
  CHECK(v.first == TowerElem(0));
  CHECK(v.second == TowerElem(1));
  CHECK(apply_twists(res.twists, pt(1, 0, 0)) == pt(0, 1, 0));
}

TEST_CASE("transitivity trivial instance gives the empty composition") {
  auto res = transitivity_solve({pt(1, 0, 0), pt(0, 0, 1)}, {pt(1, 0, 0), pt(0, 0, 1)});
  CHECK(res.twists.empty());
}

TEST_CASE("transitivity moves two points including a pole input") {
  std::vector<SpherePoint> P = {pt(1, 0, 0), pt(Rational(3, 5), Rational(4, 5), 0)};
  std::vector<SpherePoint> Q = {pt(0, 1, 0), pt(Rational(-3, 5), Rational(4, 5), 0)};
  auto res = transitivity_solve(P, Q);
  CHECK(res.twists.size() <= 4);
  for (size_t j = 0; j < P.size(); ++j) CHECK(apply_twists(res.twists, P[j]) == Q[j]);

  // poles allowed as inputs
  std::vector<SpherePoint> P2 = {pt(1, 0, 0), pt(0, 0, 1)};
  std::vector<SpherePoint> Q2 = {pt(0, 1, 0), pt(0, 0, -1)};
  auto res2 = transitivity_solve(P2, Q2);
  CHECK(res2.twists.size() <= 4);
  for (size_t j = 0; j < P2.size(); ++j) CHECK(apply_twists(res2.twists, P2[j]) == Q2[j]);
}

TEST_CASE("transitivity swap cycle stays within the twist budget") {
  SpherePoint A = pt(1, 0, 0);
  SpherePoint B = pt(0, 1, 0);
  auto res = transitivity_solve({A, B}, {B, A});
  CHECK(res.twists.size() <= 4);
  CHECK(apply_twists(res.twists, A) == B);
  CHECK(apply_twists(res.twists, B) == A);
}

TEST_CASE("transitivity three-cycle") {
  SpherePoint A = pt(1, 0, 0);
  SpherePoint B = pt(0, 1, 0);
  SpherePoint C = pt(0, 0, 1);
  // A->B->C->A: P = (A,B,C), Q = (B,C,A)
  auto res = transitivity_solve({A, B, C}, {B, C, A});
  CHECK(res.twists.size() <= 6);
  CHECK(apply_twists(res.twists, A) == B);
  CHECK(apply_twists(res.twists, B) == C);
  CHECK(apply_twists(res.twists, C) == A);
}

TEST_CASE("transitivity rejects bad input") {
  CHECK_THROWS_AS(transitivity_solve({}, {}), Error);
  CHECK_THROWS_AS(transitivity_solve({pt(1, 0, 0), pt(1, 0, 0)}, {pt(0, 1, 0), pt(0, 0, 1)}),
                  Error);
  TowerCtx ctx;
  auto r2 = adjoin_sqrt(ctx, Rational(2));
  TowerElem h = TowerElem(1) / r2.root;
  CHECK_THROWS_AS(transitivity_solve({SpherePoint(h, h, TowerElem(0))}, {pt(1, 0, 0)}), Error);
}

TEST_CASE("transitivity randomized instances with exact hits") {
  std::mt19937_64 rng(20260811);
  std::uniform_int_distribution<int> coord(-4, 4);
  auto random_point = [&]() {
    while (true) {
      int a = coord(rng), b = coord(rng);
      ProjPoint plane({TowerElem(a), TowerElem(b), TowerElem(1)});
      return sphere_from_plane(plane);
    }
  };
  for (int trial = 0; trial < 8; ++trial) {
    size_t n = 1 + size_t(trial % 3);
    std::vector<SpherePoint> P, Q;
    while (P.size() < n) {
      SpherePoint p = random_point();
      bool dup = false;
      for (const auto& q : P)
        if (q == p) dup = true;
      if (!dup) P.push_back(p);
    }
    while (Q.size() < n) {
      SpherePoint p = random_point();
      bool dup = false;
      for (const auto& q : Q)
        if (q == p) dup = true;
      if (!dup) Q.push_back(p);
    }
    auto res = transitivity_solve(P, Q);
    CHECK(res.twists.size() <= 2 * n);
    for (size_t j = 0; j < n; ++j) CHECK(apply_twists(res.twists, P[j]) == Q[j]);
  }
}

TEST_CASE("dehn twist profile") {
  // winding 1 with no fixed levels
  TwistingMap plain = dehn_twist_map({}, Rational(1, 4), Rational(1));
  CHECK(winding_number(plain.profile) == 1);

  // fixed levels pinned exactly
  std::vector<TowerElem> levels = {TowerElem(Rational(1, 2)), TowerElem(Rational(-1, 2))};
  TwistingMap t = dehn_twist_map(levels, Rational(1, 4), Rational(1, 20));
  CHECK(winding_number(t.profile) == 1);
  for (const auto& lvl : levels) {
    auto v = t.profile.at(lvl);
    CHECK(v.first == TowerElem(1));
    CHECK(v.second == TowerElem(0));
  }
  // the twisting map fixes every point at a pinned level; level 1/2 needs
  // sqrt(3)/2 in the x coordinate
  TowerCtx ctx;
  auto r3 = adjoin_sqrt(ctx, Rational(3));
  SpherePoint on_level(r3.root / TowerElem(2), TowerElem(0), TowerElem(Rational(1, 2)));
  CHECK(apply_twists({t}, on_level) == on_level);

  CHECK_THROWS_AS(dehn_twist_map({}, Rational(2), Rational(1)), Error);
  CHECK_THROWS_AS(dehn_twist_map({TowerElem(Rational(1, 8))}, Rational(1, 4), Rational(1)), Error);
}

TEST_CASE("dehn twist loose tolerance always succeeds at minimal degree") {
  TwistingMap t = dehn_twist_map({TowerElem(Rational(1, 2))}, Rational(1, 4), Rational(1));
  CHECK(t.profile.pn().total_degree() <= 1);
  CHECK(winding_number(t.profile) == 1);
}
