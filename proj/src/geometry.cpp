#include "birat/geometry.hpp"

namespace birat {

SpherePoint::SpherePoint(TowerElem px, TowerElem py, TowerElem pz)
    : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {
  TowerElem norm = x * x + y * y + z * z;
  if (!(norm == TowerElem(1)))
    fail(Errc::InvalidPoint, "point does not satisfy x^2+y^2+z^2 = 1");
}

bool SpherePoint::rational() const {
  return x.is_rational() && y.is_rational() && z.is_rational();
}

ProjPoint::ProjPoint(std::vector<TowerElem> c) : coords(std::move(c)) {
  bool all_zero = true;
  for (const auto& e : coords)
    if (!e.is_zero()) all_zero = false;
  if (coords.empty() || all_zero)
    fail(Errc::InvalidPoint, "projective point needs a nonzero coordinate");
}

bool proj_equal(const ProjPoint& a, const ProjPoint& b) {
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i)
    for (size_t j = i + 1; j < a.arity(); ++j)
      if (!(a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i]).is_zero()) return false;
  return true;
}

Rotation3::Rotation3(std::array<TowerElem, 9> entries) : m_(std::move(entries)) {
  // R^T R = I and det R = 1, both exact.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TowerElem dot(0);
      for (int k = 0; k < 3; ++k) dot += at(k, i) * at(k, j);
      if (!(dot == TowerElem(i == j ? 1 : 0)))
        fail(Errc::InvalidPoint, "matrix is not orthogonal");
    }
  TowerElem det = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                  at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                  at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  if (!(det == TowerElem(1))) fail(Errc::InvalidPoint, "matrix has determinant != 1");
}

Rotation3 Rotation3::identity() {
  Rotation3 r;
  for (int i = 0; i < 9; ++i) r.m_[i] = TowerElem(i % 4 == 0 ? 1 : 0);
  return r;
}

std::array<TowerElem, 3> Rotation3::apply(const std::array<TowerElem, 3>& v) const {
  std::array<TowerElem, 3> out{TowerElem(0), TowerElem(0), TowerElem(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += at(i, j) * v[j];
  return out;
}

SpherePoint Rotation3::apply(const SpherePoint& p) const {
  auto v = apply(std::array<TowerElem, 3>{p.x, p.y, p.z});
  return SpherePoint(v[0], v[1], v[2]);
}

Rotation3 Rotation3::transpose() const {
  Rotation3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[j * 3 + i] = at(i, j);
  return r;
}

Rotation3 Rotation3::operator*(const Rotation3& rhs) const {
  Rotation3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TowerElem sum(0);
      for (int k = 0; k < 3; ++k) sum += at(i, k) * rhs.at(k, j);
      r.m_[i * 3 + j] = sum;
    }
  return r;
}

std::array<TowerElem, 3> Rotation3::row(int r) const { return {at(r, 0), at(r, 1), at(r, 2)}; }

Rotation3 Rotation3::cycled() const {
  Rotation3 r;
  for (int j = 0; j < 3; ++j) {
    r.m_[0 * 3 + j] = at(2, j);
    r.m_[1 * 3 + j] = at(0, j);
    r.m_[2 * 3 + j] = at(1, j);
  }
  return r;
}

bool Rotation3::rational() const {
  for (const auto& e : m_)
    if (!e.is_rational()) return false;
  return true;
}

Rotation3 cayley_rotation(const Rational& a, const Rational& b, const Rational& c) {
  // K = skew(a,b,c); R = (I - K)(I + K)^{-1}. I + K is invertible for any
  // real skew K, with det(I + K) = 1 + a^2 + b^2 + c^2.
  Rational d = 1 + a * a + b * b + c * c;
  // Closed form of the Cayley transform:
  // R = [ 1+a^2-b^2-c^2,  2(ab+c),        2(ac-b)
  //       2(ab-c),        1-a^2+b^2-c^2,  2(bc+a)
  //       2(ac+b),        2(bc-a),        1-a^2-b^2+c^2 ] / d
  std::array<Rational, 9> e = {
      1 + a * a - b * b - c * c, 2 * (a * b + c),           2 * (a * c - b),
      2 * (a * b - c),           1 - a * a + b * b - c * c, 2 * (b * c + a),
      2 * (a * c + b),           2 * (b * c - a),           1 - a * a - b * b + c * c};
  std::array<TowerElem, 9> m;
  for (int i = 0; i < 9; ++i) m[i] = TowerElem(e[i] / d);
  return Rotation3(m);
}

Rotation3 reflection_to_pole(const SpherePoint& v) {
  if (!v.rational()) fail(Errc::NonRationalInput, "reflection_to_pole needs rational coordinates");
  std::array<TowerElem, 3> u = {v.x, v.y, v.z - TowerElem(1)};
  TowerElem uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  if (uu.is_zero()) return Rotation3::identity();  // v is already the pole
  // H = I - 2 u u^T / (u.u) reflects v to e_z; diag(-1,1,1) restores det 1.
  TowerElem two_over(TowerElem(2) / uu);
  std::array<TowerElem, 9> h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TowerElem e = TowerElem(i == j ? 1 : 0) - two_over * u[i] * u[j];
      h[i * 3 + j] = (i == 0) ? -e : e;
    }
  return Rotation3(h);
}

SpherePoint sphere_from_plane(const ProjPoint& p) {
  if (p.arity() != 3) fail(Errc::InvalidPoint, "expected a point of P^2");
  for (const auto& c : p.coords)
    if (!c.is_rational()) fail(Errc::NonRationalInput, "expected rational coordinates");
  const TowerElem& x = p.coords[0];
  const TowerElem& y = p.coords[1];
  const TowerElem& z = p.coords[2];
  TowerElem w = x * x + y * y + z * z;  // positive for real nonzero input
  return SpherePoint(TowerElem(2) * x * z / w, TowerElem(2) * y * z / w,
                     (x * x + y * y - z * z) / w);
}

}  // namespace birat
