#pragma once

#include "crs/boundary.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace crs {

struct CCircle {
  HVector polar;
};

// Complex line tangent to S^3 at p (polar vector is p itself).
struct TangentLine {
  HVector polar;
};

// Arc of C-circle from `from` to `to`: points a + (i t/<b,a>) b, t > 0.
struct Arc {
  BoundaryPoint from;
  BoundaryPoint to;
};

struct RCircle {
  GroupElement frame;  // image of the standard R-circle
};

struct CurveSample {
  std::vector<BoundaryPoint> points;
  bool closed = false;
  std::string source;
};

CCircle ccircle_through(const BoundaryPoint& a, const BoundaryPoint& b);
CCircle support(const Arc& a);
double on_ccircle_residual(const CCircle& c, const BoundaryPoint& p);

struct CircleMeet {
  enum Kind { Disjoint, Meet, Equal } kind = Disjoint;
  double margin = 0.0;  // signed <n,n>/|n|^2
  std::optional<HVector> point;
};
CircleMeet ccircles_intersect(const CCircle& c1, const CCircle& c2, double tol_null = tol::null_rel);

BoundaryPoint arc_point(const Arc& arc, double t);
// Real part is the chart parameter of q; imaginary part measures how far q is off the circle.
cplx arc_parameter(const Arc& arc, const HVector& q);
bool arc_contains(const Arc& arc, const BoundaryPoint& q);

struct ArcRelation {
  enum Kind { Disjoint, Cross, ShareEndpoint, SameSupport } kind = Disjoint;
  enum Support { None, Equal, Opposite, Overlapping, Separate } support = None;
  double margin = 0.0;
  std::optional<BoundaryPoint> point;
};
const char* to_string(ArcRelation::Kind k);
const char* to_string(ArcRelation::Support s);
ArcRelation arcs_intersect(const Arc& a1, const Arc& a2, double tol_null = tol::null_rel);

TangentLine tangent_polar(const BoundaryPoint& p);

RCircle standard_rcircle();
bool on_standard_rcircle(const BoundaryPoint& p, double tol = 1e-12);
Arc foliation_leaf_rcircle(const BoundaryPoint& p);
Arc foliation_leaf(const RCircle& r, const BoundaryPoint& p);

CurveSample rcircle_sample(int n);
CurveSample bent_curve(double theta, int n, double log_range = 6.0);
CurveSample ccircle_sample(const CCircle& c, int n);

struct BentCertificate {
  double direct = 0.0;
  double factored = 0.0;
};
// direct = kappa * factored; fixed by evaluation at generic points, see tests.
inline constexpr double kBentKappa = 0.125;
BentCertificate bent_certificate(double x, double y, double z, double t, double theta);

struct BentLeaf {
  Arc arc;
  double residual = 0.0;
  int candidates = 0;
};
BentLeaf bent_leaf(const BoundaryPoint& p, double theta);

CurveSample spiral_curve(double a, double s_min, double s_max, int n);
BoundaryPoint spiral_point(double a, double s);

struct MobiusSample {
  std::vector<HVector> images;
  double injectivity_margin = 0.0;
  std::size_t witness_a = 0, witness_b = 0;
};
MobiusSample mobius_sample(const CurveSample& e);

BoundaryPoint flow_point(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& z);
// Log-height of the foot of z on the real geodesic from x to y, in the normalizing frame.
double geodesic_foot(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& z);

}  // namespace crs
