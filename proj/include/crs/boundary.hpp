#pragma once

#include "crs/hermitian.hpp"

#include <string>

namespace crs {

// Point of S^3 in Heisenberg coordinates [z,t] or the point at infinity.
struct BoundaryPoint {
  bool at_infinity = false;
  cplx z{0.0, 0.0};
  double t = 0.0;

  static BoundaryPoint finite(cplx z, double t) { return BoundaryPoint{false, z, t}; }
  static BoundaryPoint infinity() { return BoundaryPoint{true, {0.0, 0.0}, 0.0}; }

  // (-|z|^2 + it, z, 1) or (1,0,0)
  HVector lift() const;
  HVector unit_lift() const { return lift().unit(); }
  std::string str() const;
};

struct CartanValue {
  double angle = 0.0;
  bool degenerate = false;
};

BoundaryPoint heis_from_lift(const HVector& v, double tol_null = 1e-8);
BoundaryPoint apply(const GroupElement& g, const BoundaryPoint& p);

// Euclidean distance of the images in the unit sphere of C^2 (ball model).
double chordal(const BoundaryPoint& a, const BoundaryPoint& b);
Eigen::Vector4d ball_coordinates(const BoundaryPoint& p);

// Two unit null lifts are identified when |<p,q>| falls below this.
inline constexpr double kCoincide = 1e-14;

CartanValue cartan(const HVector& p, const HVector& q, const HVector& r);
CartanValue cartan(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r);

double hyp_distance(const HVector& p, const HVector& q);

// x - (<x,m>/<m,m>) m
ProjectivePoint project_to_line(const HVector& x, const HVector& m);

// Element sending a to [0,0] and b to infinity.
GroupElement normalizing_frame(const BoundaryPoint& a, const BoundaryPoint& b);

// Coordinate w of a point (w,0,1) of the line L(a,b) in the normalizing frame.
cplx line_coordinate(const HVector& x, const BoundaryPoint& a, const BoundaryPoint& b);

ProjectivePoint project_star(const BoundaryPoint& e, const BoundaryPoint& a, const BoundaryPoint& b);
ProjectivePoint project_tangent(const BoundaryPoint& e, const BoundaryPoint& p);

// tan(alpha)|z|^2 - |t|
double paraboloid_margin(const BoundaryPoint& p, double alpha);

}  // namespace crs
