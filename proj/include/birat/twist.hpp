#pragma once

#include "birat/circle_map.hpp"
#include "birat/geometry.hpp"
#include "birat/surface_map.hpp"

namespace birat {

// Twisting map phi_f(x,y,z) = (f(z)·(x,y), z) conjugated by a frame rotation.
// The realized map carries the sphere-image certificate:
//   sum(num_i^2) - den^2 lies in <x^2+y^2+z^2-1>.
struct TwistingMap {
  CircleMap profile;
  Rotation3 frame;       // maps the twist axis to e_z
  RationalMap realized;  // Sphere -> Sphere, affine representation
};

TwistingMap twisting_map(const CircleMap& f, const Rotation3& frame);

// Conjugate profile, same frame: the exact inverse on the sphere.
TwistingMap twist_inverse(const TwistingMap& t);

// The same map re-expressed over the sub-tower of generators its data
// actually uses. Certificates compose dramatically faster on compacted
// twists; application to points from a wider solver context needs the
// original.
TwistingMap compact_twist(const TwistingMap& t);

// maps_equal certificate for g o f == identity for twisting maps about the
// same axis, computed on the frame-aligned representatives. Exact: the frame
// change of coordinates is an exact rotation and the sphere ideal is
// invariant under it, so the aligned certificate transfers to the ambient
// composition. Throws on frame mismatch.
MapsEqualResult certify_twist_pair_identity(const TwistingMap& g, const TwistingMap& f);

struct SolveOptions {
  int height_cap = 64;      // Cayley parameter height bound for axis search
  long max_candidates = 200000;
};

struct SolveResult {
  std::vector<TwistingMap> twists;  // apply in order: F = t_k o ... o t_1
  TowerCtx ctx;                     // tower generated by the intermediate points
};

// Moves P_j to Q_j for all j by a composition of at most 2n twisting maps.
// Inputs are rational sphere points, pairwise distinct within each tuple.
SolveResult transitivity_solve(const std::vector<SpherePoint>& P,
                               const std::vector<SpherePoint>& Q,
                               const SolveOptions& options = {});

SpherePoint apply_twists(const std::vector<TwistingMap>& twists, const SpherePoint& p);

// Profile with winding number exactly 1 that fixes the given levels exactly
// and stays within tol of the step profile outside [-2*eps, 2*eps], checked
// on a uniform 1000-point rational grid.
TwistingMap dehn_twist_map(const std::vector<TowerElem>& fixed_levels, const Rational& eps,
                           const Rational& tol);

}  // namespace birat
