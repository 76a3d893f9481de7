#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birat/geometry.hpp"

using namespace birat;

namespace {

bool is_identity(const Rotation3& r) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(r.at(i, j) == TowerElem(i == j ? 1 : 0))) return false;
  return true;
}

// Independent oracle for the Cayley transform: exact 3x3 inverse of (I + K)
// via the adjugate, multiplied by (I - K).
std::array<Rational, 9> cayley_oracle(const Rational& a, const Rational& b, const Rational& c) {
  std::array<std::array<Rational, 3>, 3> K = {{{Rational(0), -c, b}, {c, Rational(0), -a}, {-b, a, Rational(0)}}};
  std::array<std::array<Rational, 3>, 3> IP, IM;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      IP[i][j] = (i == j ? Rational(1) : Rational(0)) + K[i][j];
      IM[i][j] = (i == j ? Rational(1) : Rational(0)) - K[i][j];
    }
  auto det3 = [](const std::array<std::array<Rational, 3>, 3>& M) {
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
           M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  };
  Rational det = det3(IP);
  std::array<std::array<Rational, 3>, 3> inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // cofactor expansion
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      inv[j][i] = (IP[r0][c0] * IP[r1][c1] - IP[r0][c1] * IP[r1][c0]);
      // adjugate sign handled by cyclic index choice
    }
  std::array<Rational, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational sum = 0;
      for (int k = 0; k < 3; ++k) sum += IM[i][k] * inv[k][j];
      out[size_t(i * 3 + j)] = sum / det;
    }
  return out;
}

}  // namespace

TEST_CASE("sphere point invariant is enforced") {
  CHECK_NOTHROW(SpherePoint(TowerElem(Rational(3, 5)), TowerElem(0), TowerElem(Rational(4, 5))));
  CHECK_THROWS_AS(SpherePoint(TowerElem(1), TowerElem(1), TowerElem(0)), Error);
}

TEST_CASE("cayley rotation matches the (I-K)(I+K)^{-1} oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    Rotation3 r = cayley_rotation(a, b, c);
    auto expect = cayley_oracle(a, b, c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(r.at(i, j) == TowerElem(expect[size_t(i * 3 + j)]));
  }
}

TEST_CASE("cayley rotation special values") {
  CHECK(is_identity(cayley_rotation(0, 0, 0)));
  Rotation3 r = cayley_rotation(0, 0, 1);
  CHECK(r.at(0, 0) == TowerElem(0));
  CHECK(r.at(0, 1) == TowerElem(1));
  CHECK(r.at(0, 2) == TowerElem(0));
  CHECK(r.at(1, 0) == TowerElem(-1));
  CHECK(r.at(1, 1) == TowerElem(0));
  CHECK(r.at(2, 2) == TowerElem(1));
}

TEST_CASE("rotation constructor rejects non-orthogonal input") {
  std::array<TowerElem, 9> bad;
  for (int i = 0; i < 9; ++i) bad[size_t(i)] = TowerElem(i % 4 == 0 ? 2 : 0);
  CHECK_THROWS_AS(Rotation3{bad}, Error);
}

TEST_CASE("reflection_to_pole sends v to the north pole") {
  SpherePoint ez(TowerElem(0), TowerElem(0), TowerElem(1));
  CHECK(is_identity(reflection_to_pole(ez)));

  SpherePoint ex(TowerElem(1), TowerElem(0), TowerElem(0));
  Rotation3 r = reflection_to_pole(ex);
  SpherePoint im = r.apply(ex);
  CHECK(im.x == TowerElem(0));
  CHECK(im.y == TowerElem(0));
  CHECK(im.z == TowerElem(1));

  SpherePoint v(TowerElem(Rational(3, 5)), TowerElem(0), TowerElem(Rational(4, 5)));
  Rotation3 rv = reflection_to_pole(v);
  SpherePoint imv = rv.apply(v);
  CHECK(imv.x == TowerElem(0));
  CHECK(imv.y == TowerElem(0));
  CHECK(imv.z == TowerElem(1));

  // R composed with its transpose is the identity
  CHECK(is_identity(rv * rv.transpose()));

  SpherePoint south(TowerElem(0), TowerElem(0), TowerElem(-1));
  Rotation3 rs = reflection_to_pole(south);
  SpherePoint ims = rs.apply(south);
  CHECK(ims.z == TowerElem(1));
}

TEST_CASE("sphere_from_plane matches the substitution formula") {
  auto p = [](int a, int b, int c) {
    return ProjPoint({TowerElem(a), TowerElem(b), TowerElem(c)});
  };
  SpherePoint s1 = sphere_from_plane(p(0, 0, 1));
  CHECK(s1 == SpherePoint(TowerElem(0), TowerElem(0), TowerElem(-1)));
  SpherePoint s2 = sphere_from_plane(p(1, 0, 1));
  CHECK(s2 == SpherePoint(TowerElem(1), TowerElem(0), TowerElem(0)));
  SpherePoint s3 = sphere_from_plane(p(1, 1, 0));
  CHECK(s3 == SpherePoint(TowerElem(0), TowerElem(0), TowerElem(1)));
}

TEST_CASE("sphere_from_plane is injective on rational samples") {
  std::vector<SpherePoint> seen;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      SpherePoint s = sphere_from_plane(ProjPoint({TowerElem(a), TowerElem(b), TowerElem(1)}));
      for (const auto& t : seen) CHECK(!(s == t));
      seen.push_back(s);
    }
}

TEST_CASE("proj_equal is scale invariant") {
  ProjPoint a({TowerElem(1), TowerElem(2), TowerElem(3)});
  ProjPoint b({TowerElem(2), TowerElem(4), TowerElem(6)});
  ProjPoint c({TowerElem(1), TowerElem(2), TowerElem(4)});
  CHECK(proj_equal(a, b));
  CHECK(!proj_equal(a, c));
  CHECK_THROWS_AS(ProjPoint({TowerElem(0), TowerElem(0)}), Error);
}

TEST_CASE("rotations compose and cycle") {
  Rotation3 r = cayley_rotation(Rational(1, 2), Rational(1, 3), Rational(-2));
  Rotation3 c = r.cycled();
  // cycled rows: row0' = row2, row1' = row0, row2' = row1
  for (int j = 0; j < 3; ++j) {
    CHECK(c.at(0, j) == r.at(2, j));
    CHECK(c.at(1, j) == r.at(0, j));
    CHECK(c.at(2, j) == r.at(1, j));
  }
  CHECK(is_identity(r * r.transpose()));
}
