#include "crs/boundary.hpp"

#include <cmath>
#include <cstdio>

namespace crs {

HVector BoundaryPoint::lift() const {
  if (at_infinity) return HVector(1.0, 0.0, 0.0);
  return HVector(cplx(-std::norm(z), t), z, 1.0);
}

std::string BoundaryPoint::str() const {
  if (at_infinity) return "inf";
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.9g%+.9gi, %.9g]", z.real(), z.imag(), t);
  return buf;
}

BoundaryPoint heis_from_lift(const HVector& v, double tol_null) {
  if (v.model != Model::Siegel) throw GeometryError(ErrorCode::ModelMismatch, "heis_from_lift expects a Siegel vector");
  ProjectivePoint p = point_type(v, tol_null);
  if (p.type != PointType::Null)
    throw GeometryError(ErrorCode::WrongType, "heis_from_lift of a non-null vector (margin " +
                                                  std::to_string(p.type_margin) + ")");
  double n = v.norm();
  if (std::abs(v[2]) <= 1e-12 * n) return BoundaryPoint::infinity();
  cplx q = v[0] / v[2];
  return BoundaryPoint::finite(v[1] / v[2], q.imag());
}

BoundaryPoint apply(const GroupElement& g, const BoundaryPoint& p) {
  GroupElement s = g.to_model(Model::Siegel);
  return heis_from_lift((s * p.lift()).unit(), 1e-7);
}

Eigen::Vector4d ball_coordinates(const BoundaryPoint& p) {
  Vec3 w = cayley_matrix() * p.unit_lift().v;
  cplx a = w(0) / w(2), b = w(1) / w(2);
  return Eigen::Vector4d(a.real(), a.imag(), b.real(), b.imag());
}

double chordal(const BoundaryPoint& a, const BoundaryPoint& b) {
  return (ball_coordinates(a) - ball_coordinates(b)).norm();
}

CartanValue cartan(const HVector& p, const HVector& q, const HVector& r) {
  HVector pu = p.unit(), qu = q.unit(), ru = r.unit();
  cplx pq = herm_inner(pu, qu), qr = herm_inner(qu, ru), rp = herm_inner(ru, pu);
  if (std::abs(pq) < kCoincide || std::abs(qr) < kCoincide || std::abs(rp) < kCoincide) return {0.0, true};
  return {std::arg(-(pq * qr * rp)), false};
}

CartanValue cartan(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
  return cartan(p.lift(), q.lift(), r.lift());
}

double hyp_distance(const HVector& p, const HVector& q) {
  ProjectivePoint a = point_type(p), b = point_type(q);
  if (a.type != PointType::Negative || b.type != PointType::Negative)
    throw GeometryError(ErrorCode::WrongType, "hyp_distance needs negative points");
  HVector pu = p.unit(), qu = q.unit();
  double ratio = std::norm(herm_inner(pu, qu)) / (herm_norm(pu) * herm_norm(qu));
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, ratio - 1.0)));
}

ProjectivePoint project_to_line(const HVector& x, const HVector& m) {
  if (point_type(m).type != PointType::Positive)
    throw GeometryError(ErrorCode::WrongType, "project_to_line needs a positive polar vector");
  if (fs_distance(x, m) < 1e-12) throw GeometryError(ErrorCode::Degenerate, "projecting the polar point itself");
  return point_type(x - (herm_inner(x, m) / herm_inner(m, m)) * m);
}

GroupElement normalizing_frame(const BoundaryPoint& a, const BoundaryPoint& b) {
  HVector ha = a.unit_lift();
  HVector hb = b.unit_lift();
  cplx ba = herm_inner(hb, ha);
  if (std::abs(ba) < kCoincide) throw GeometryError(ErrorCode::Degenerate, "normalizing_frame of coincident points");
  hb = (1.0 / ba) * hb;
  HVector m = box(ha, hb);
  double mm = herm_norm(m);
  m = cplx(std::sqrt(2.0 / mm)) * m;
  Mat3 g;
  g.col(0) = hb.v;
  g.col(1) = m.v;
  g.col(2) = ha.v;
  return GroupElement(g.inverse()).unimodular();
}

cplx line_coordinate(const HVector& x, const BoundaryPoint& a, const BoundaryPoint& b) {
  HVector y = normalizing_frame(a, b) * x;
  return y[0] / y[2];
}

ProjectivePoint project_star(const BoundaryPoint& e, const BoundaryPoint& a, const BoundaryPoint& b) {
  if (chordal(a, b) < 1e-12 || chordal(e, a) < 1e-12 || chordal(e, b) < 1e-12)
    throw GeometryError(ErrorCode::Degenerate, "project_star needs e, a, b distinct");
  HVector m = box(a.unit_lift(), b.unit_lift());
  return point_type(standard_lift(box(e.unit_lift(), m)));
}

ProjectivePoint project_tangent(const BoundaryPoint& e, const BoundaryPoint& p) {
  if (chordal(e, p) < 1e-12) return point_type(e.lift());
  return point_type(standard_lift(box(p.unit_lift(), e.unit_lift())));
}

double paraboloid_margin(const BoundaryPoint& p, double alpha) {
  if (p.at_infinity) throw GeometryError(ErrorCode::BadInput, "paraboloid_margin of infinity");
  return std::tan(alpha) * std::norm(p.z) - std::abs(p.t);
}

}  // namespace crs
