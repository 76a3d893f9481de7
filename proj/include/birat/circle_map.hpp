#pragma once

#include <utility>
#include <vector>

#include "birat/polynomial.hpp"

namespace birat {

// Pole-free rational map [-1,1] -> S^1 in half-angle form. With t = pn/pd,
//   h(t) = ((1-t^2)/(1+t^2), 2t/(1+t^2))
// and a post-rotation by the exact circle point `post`:
//   f = post * h(pn/pd)   (complex multiplication).
// The realized numerators/denominator are
//   den = pd^2 + pn^2,  f1 = (post1*(pd^2-pn^2) - 2*post2*pn*pd) / den,
//                       f2 = (post2*(pd^2-pn^2) + 2*post1*pn*pd) / den.
// When pn and pd are coprime the denominator has no real roots at all, so f
// is pole-free on [-1,1] by construction; f1^2 + f2^2 = 1 identically.
class CircleMap {
public:
  // Constant profile (1,0) (the identity rotation at every level).
  CircleMap();

  // p polynomial (pd = 1) with post-rotation.
  CircleMap(MultiPoly p, std::pair<TowerElem, TowerElem> post);

  // General rational parameter pn/pd; reduced to coprime form internally.
  CircleMap(MultiPoly pn, MultiPoly pd, std::pair<TowerElem, TowerElem> post);

  static CircleMap constant(const TowerElem& c1, const TowerElem& c2);

  const MultiPoly& pn() const { return pn_; }
  const MultiPoly& pd() const { return pd_; }
  const std::pair<TowerElem, TowerElem>& post() const { return post_; }

  // Realized coordinate fractions over the common denominator.
  MultiPoly num1() const;
  MultiPoly num2() const;
  MultiPoly den() const;

  // Exact evaluation; z must not be a zero of den (never real for coprime
  // pn, pd).
  std::pair<TowerElem, TowerElem> at(const TowerElem& z) const;

  // Complex-conjugate profile: the pointwise multiplicative inverse on S^1.
  CircleMap conjugate() const;

  friend CircleMap circle_mul(const CircleMap& a, const CircleMap& b);

private:
  MultiPoly pn_, pd_;  // parameter fraction in the variable z
  std::pair<TowerElem, TowerElem> post_;
};

// Pointwise complex product of two circle maps.
CircleMap circle_mul(const CircleMap& a, const CircleMap& b);

struct CircleNode {
  TowerElem z;            // level in (-1,1)
  TowerElem rho1, rho2;   // target on the unit circle, exactly
};

// Lagrange interpolation of circle targets: f(z_j) = rho_j exactly. Targets
// hitting (-1,0) are handled by a post-rotation (flip first, then a searched
// rational circle point).
CircleMap interpolate_circle(const std::vector<CircleNode>& nodes);

// Degree of f: [-1,1] -> S^1 with endpoints glued through the shorter arc.
// Computed exactly from pole side-signs of the parameter fraction.
int winding_number(const CircleMap& f);

// --- univariate helpers over the tower field (exposed for tests) -----------

// Number of distinct real roots of a univariate polynomial in (a, b].
int sturm_root_count(const std::vector<TowerElem>& poly, const Rational& a, const Rational& b);

std::vector<TowerElem> univariate_gcd(std::vector<TowerElem> a, std::vector<TowerElem> b);

}  // namespace birat
