#pragma once

#include <array>

#include "birat/surface_map.hpp"

namespace birat {

// Point of the blow-up B_(0,0)A^2 in A^2 x P^1: base (x,y), direction [u:v],
// incidence u*y = v*x.
struct BlowupChartPoint {
  TowerElem x, y;
  TowerElem u, v;

  BlowupChartPoint(TowerElem bx, TowerElem by, TowerElem du, TowerElem dv);

  SurfacePoint as_point() const;
};

// Stereographic projection from the north pole [1:0:0:1] and its inverse:
//   pi_N:     [w:x:y:z] -> [x : y : w-z]
//   pi_N^-1:  [x:y:z]   -> [x^2+y^2+z^2 : 2xz : 2yz : x^2+y^2-z^2]
std::pair<RationalMap, RationalMap> stereographic_north();

// The standard quadratic involution [x:y:z] -> [yz:xz:xy].
RationalMap sigma0();

// The quadratic involution [x:y:z] -> [y^2+z^2 : xy : xz] whose two non-real
// base points make it independent of sigma0 over the reals.
RationalMap sigma1();

// Birational involution of P^1 x P^1:
//   ([x0:x1],[y0:y1]) -> ([x0:x1],[x0y0+x1y1 : x1y0-x0y1])
RationalMap tau0();

// Complex-setting involution e: ([x0:x1],[y0:y1]) -> ([x0:x1],[x0y1:x1y0]).
RationalMap e_invol();

// Monomial torus map for a 2x2 integer matrix with determinant +-1, acting on
// affine torus coordinates (s,t) -> (s^a t^b, s^c t^d), homogenized.
RationalMap monomial_torus(const std::array<long long, 4>& m);

struct BlowupCharts {
  RationalMap phi0;      // V0 -> A^2, ((x,y),[u:v]) -> (x, v/u)
  RationalMap phi1;      // V1 -> A^2, ((x,y),[u:v]) -> (x, u/v)
  RationalMap proj;      // B_(0,0)A^2 -> A^2, ((x,y),[u:v]) -> (x,y)
  RationalMap phi0_inv;  // A^2 -> B, (x,w) -> ((x, xw), [1:w])
  RationalMap phi1_inv;  // A^2 -> B, (x,w) -> ((x*w... see source
};

BlowupCharts blowup_chart_maps();

// Registry used by the CLI: pi_N, pi_N_inv, sigma0, sigma1, tau0, e,
// monomial:[a,b,c,d], blowup_phi0, blowup_phi1, blowup_proj.
RationalMap catalog_map(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace birat
