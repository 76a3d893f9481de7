#pragma once

#include <optional>
#include <string>
#include <vector>

#include "birat/geometry.hpp"
#include "birat/polynomial.hpp"

namespace birat {

// Surfaces carrying points and maps. Sphere is the affine unit sphere in
// (x,y,z); Quadric is its projective model Q_{3,1} in P^3 with coordinates
// [w:x:y:z] and relation x^2+y^2+z^2 = w^2.
enum class Surface { Sphere, Quadric, P2, P1xP1, A2, BlowupChart };

const char* surface_name(Surface s);
Surface surface_from_name(const std::string& name);

// Coordinate conventions per surface.
std::vector<std::string> surface_vars(Surface s);
size_t surface_point_arity(Surface s);
bool surface_is_projective(Surface s);  // projective-tuple map representation

// A rational map between surfaces as a tuple of coordinate polynomials in the
// source variables. Projective targets use homogeneous tuples (no
// denominators); affine targets carry one denominator per coordinate.
struct RationalMap {
  Surface source = Surface::P2;
  Surface target = Surface::P2;
  std::vector<MultiPoly> nums;
  std::vector<MultiPoly> dens;  // empty for projective targets

  bool affine() const { return !dens.empty(); }
};

RationalMap identity_map(Surface s);

void validate_map(const RationalMap& f);

// A point of a surface as a coordinate tuple:
//   Sphere (x,y,z) affine; Quadric [w:x:y:z]; P2 [x:y:z];
//   P1xP1 ([x0:x1],[y0:y1]) flattened; A2 (x,y); BlowupChart ((x,y),[u:v]).
struct SurfacePoint {
  Surface surface;
  std::vector<TowerElem> coords;
};

SurfacePoint make_surface_point(Surface s, std::vector<TowerElem> coords);

bool points_equal(const SurfacePoint& a, const SurfacePoint& b);

// Exact evaluation. Projective outputs are normalized so the first nonzero
// coordinate equals 1. Throws Indeterminate at base points and
// DenominatorZero where an affine denominator vanishes.
SurfacePoint evaluate(const RationalMap& f, const SurfacePoint& p);

// compose(g, f) applies f first. Formal substitution followed by removal of
// common content; no further simplification.
RationalMap compose(const RationalMap& g, const RationalMap& f);

// Reduction modulo the source relation (sphere or quadric); identity on the
// other surfaces.
MultiPoly reduce_mod_source(Surface source, const MultiPoly& p);

struct MapsEqualResult {
  bool equal = false;
  // Proportionality factors on Equal: one entry per coordinate group
  // (two for P1xP1 targets, one otherwise). May be empty when equality was
  // certified by vanishing minors but no polynomial factor exists on either
  // side; factor_on_rhs marks factors satisfying g = factor * f instead of
  // f = factor * g.
  std::vector<MultiPoly> factors;
  bool factor_on_rhs = false;
  std::optional<SurfacePoint> witness;  // on NotEqual: evaluations differ here
};

// Certifies f == g as maps (projectively on projective targets, exactly on
// affine ones), modulo the source relation.
MapsEqualResult maps_equal(const RationalMap& f, const RationalMap& g);

// Deterministic list of sample points of a surface, avoiding nothing; used
// for witness search and property tests.
std::vector<SurfacePoint> sample_points(Surface s, size_t count);

}  // namespace birat
