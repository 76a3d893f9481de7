#pragma once

#include <array>
#include <vector>

#include "birat/tower.hpp"

namespace birat {

// Exact point on the unit sphere: x^2 + y^2 + z^2 = 1, enforced at construction.
struct SpherePoint {
  TowerElem x, y, z;

  SpherePoint(TowerElem px, TowerElem py, TowerElem pz);

  bool rational() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }
};

// Homogeneous tuple, not all zero; equality up to a nonzero scalar.
struct ProjPoint {
  std::vector<TowerElem> coords;

  explicit ProjPoint(std::vector<TowerElem> c);

  size_t arity() const { return coords.size(); }
};

// Equality up to scalar: all 2x2 minors of the two tuples vanish.
bool proj_equal(const ProjPoint& a, const ProjPoint& b);

// Exact rotation matrix: R^T R = I and det R = 1, checked at construction.
class Rotation3 {
public:
  explicit Rotation3(std::array<TowerElem, 9> entries);

  static Rotation3 identity();

  const TowerElem& at(int row, int col) const { return m_[row * 3 + col]; }

  std::array<TowerElem, 3> apply(const std::array<TowerElem, 3>& v) const;
  SpherePoint apply(const SpherePoint& p) const;

  Rotation3 transpose() const;
  Rotation3 operator*(const Rotation3& rhs) const;

  // Row as a vector; row(2) is the level functional of the rotated z-axis.
  std::array<TowerElem, 3> row(int r) const;

  // Cyclic row shift (r0,r1,r2) -> (r2,r0,r1); stays a rotation.
  Rotation3 cycled() const;

  bool rational() const;

private:
  Rotation3() = default;
  std::array<TowerElem, 9> m_;
};

// Cayley transform of the skew matrix of (a,b,c): a rational rotation.
// (0,0,0) gives the identity; the image is dense in SO(3).
Rotation3 cayley_rotation(const Rational& a, const Rational& b, const Rational& c);

// Exact rotation R with R*v = (0,0,1), for a rational sphere point v.
// Householder reflection through v - e_z composed with diag(-1,1,1).
Rotation3 reflection_to_pole(const SpherePoint& v);

// Inverse stereographic parametrization P^2 -> S^2 from Example 2.1.3:
// [x:y:z] -> [x^2+y^2+z^2 : 2xz : 2yz : x^2+y^2-z^2], dehomogenized by the
// first coordinate. Requires a rational input point.
SpherePoint sphere_from_plane(const ProjPoint& p);

}  // namespace birat
