#include "crs/circles.hpp"

#include "crs/slimness.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSameEndpoint = 1e-9;

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b) { return chordal(a, b) < kSameEndpoint; }

// Orthonormal basis (Euclidean) of the J-orthogonal complement of m.
std::pair<Vec3, Vec3> polar_plane(const HVector& m) {
  Vec3 w = (form_matrix(m.model).cast<cplx>() * m.v).conjugate();
  // x is J-orthogonal to m iff w^T x = 0, i.e. x is Hermitian-orthogonal to conj(w).
  Vec3 n = w.conjugate().normalized();
  Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 3>> svd(n.adjoint(), Eigen::ComputeFullV);
  return {svd.matrixV().col(1), svd.matrixV().col(2)};
}

// Null vectors of the signature (1,1) plane spanned by e1, e2: returns (f+, f-) with the
// null set {f+ + e^{i psi} f-}.
std::pair<Vec3, Vec3> null_frame(const Vec3& e1, const Vec3& e2, Model model) {
  HVector h1(e1, model), h2(e2, model);
  Eigen::Matrix2cd g;
  g(0, 0) = herm_inner(h1, h1);
  g(0, 1) = herm_inner(h2, h1);
  g(1, 0) = herm_inner(h1, h2);
  g(1, 1) = herm_inner(h2, h2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(g);
  double lneg = es.eigenvalues()(0), lpos = es.eigenvalues()(1);
  if (!(lneg < 0 && lpos > 0)) throw GeometryError(ErrorCode::Degenerate, "polar plane does not have signature (1,1)");
  auto combo = [&](int k) { return Vec3(es.eigenvectors()(0, k) * e1 + es.eigenvectors()(1, k) * e2); };
  Vec3 fp = combo(1) / std::sqrt(lpos), fm = combo(0) / std::sqrt(-lneg);
  return {fp, fm};
}

}  // namespace

const char* to_string(ArcRelation::Kind k) {
  switch (k) {
    case ArcRelation::Disjoint: return "DISJOINT";
    case ArcRelation::Cross: return "CROSS";
    case ArcRelation::ShareEndpoint: return "SHARE_ENDPOINT";
    case ArcRelation::SameSupport: return "SAME_SUPPORT";
  }
  return "?";
}

const char* to_string(ArcRelation::Support s) {
  switch (s) {
    case ArcRelation::None: return "none";
    case ArcRelation::Equal: return "equal";
    case ArcRelation::Opposite: return "opposite";
    case ArcRelation::Overlapping: return "overlapping";
    case ArcRelation::Separate: return "separate";
  }
  return "?";
}

CCircle ccircle_through(const BoundaryPoint& a, const BoundaryPoint& b) {
  if (same_point(a, b)) throw GeometryError(ErrorCode::Degenerate, "ccircle_through of coincident points");
  HVector m = box(a.unit_lift(), b.unit_lift()).unit();
  return CCircle{m};
}

CCircle support(const Arc& a) { return ccircle_through(a.from, a.to); }

double on_ccircle_residual(const CCircle& c, const BoundaryPoint& p) {
  return std::abs(herm_inner(p.unit_lift(), c.polar.unit()));
}

CircleMeet ccircles_intersect(const CCircle& c1, const CCircle& c2, double tol_null) {
  HVector n = box(c1.polar.unit(), c2.polar.unit());
  double nn = n.v.squaredNorm();
  CircleMeet r;
  if (nn < 1e-20) {
    r.kind = CircleMeet::Equal;
    return r;
  }
  r.margin = herm_norm(n) / nn;
  if (std::abs(r.margin) < tol_null) {
    r.kind = CircleMeet::Meet;
    r.point = standard_lift(n);
  }
  return r;
}

BoundaryPoint arc_point(const Arc& arc, double t) {
  if (!(t > 0)) throw GeometryError(ErrorCode::BadInput, "arc_point needs t > 0");
  HVector a = arc.from.lift(), b = arc.to.lift();
  cplx ba = herm_inner(b, a);
  HVector v = a + (cplx(0.0, t) / ba) * b;
  return heis_from_lift(v.unit(), 1e-7);
}

cplx arc_parameter(const Arc& arc, const HVector& q) {
  HVector a = arc.from.lift(), b = arc.to.lift();
  HVector qs(q.v, q.model);
  cplx qb = herm_inner(qs, b);
  if (std::abs(qb) == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return cplx(0.0, -1.0) * herm_inner(qs, a) * herm_inner(a, b) / qb;
}

bool arc_contains(const Arc& arc, const BoundaryPoint& q) {
  if (same_point(q, arc.from) || same_point(q, arc.to)) return false;
  if (on_ccircle_residual(support(arc), q) > 1e-8) return false;
  return arc_parameter(arc, q.unit_lift()).real() > 0;
}

ArcRelation arcs_intersect(const Arc& a1, const Arc& a2, double tol_null) {
  ArcRelation out;
  CCircle c1 = support(a1), c2 = support(a2);
  CircleMeet meet = ccircles_intersect(c1, c2, tol_null);
  if (meet.kind == CircleMeet::Equal) {
    out.kind = ArcRelation::SameSupport;
    if (same_point(a1.from, a2.from) && same_point(a1.to, a2.to)) {
      out.support = ArcRelation::Equal;
    } else if (same_point(a1.from, a2.to) && same_point(a1.to, a2.from)) {
      out.support = ArcRelation::Opposite;
    } else {
      BoundaryPoint m1 = arc_point(a1, 1.0), m2 = arc_point(a2, 1.0);
      bool overlap = arc_contains(a1, a2.from) || arc_contains(a1, a2.to) || arc_contains(a1, m2) ||
                     arc_contains(a2, a1.from) || arc_contains(a2, a1.to) || arc_contains(a2, m1);
      out.support = overlap ? ArcRelation::Overlapping : ArcRelation::Separate;
    }
    return out;
  }
  bool shared = same_point(a1.from, a2.from) || same_point(a1.from, a2.to) || same_point(a1.to, a2.from) ||
                same_point(a1.to, a2.to);
  if (shared) {
    out.kind = ArcRelation::ShareEndpoint;
    return out;
  }
  if (meet.kind == CircleMeet::Disjoint) {
    out.kind = ArcRelation::Disjoint;
    out.margin = std::abs(meet.margin);
    return out;
  }
  BoundaryPoint q = heis_from_lift(meet.point->unit(), 1e-6);
  out.point = q;
  auto clearance = [&](const Arc& a) { return std::min(chordal(q, a.from), chordal(q, a.to)); };
  bool at_end1 = same_point(q, a1.from) || same_point(q, a1.to);
  bool at_end2 = same_point(q, a2.from) || same_point(q, a2.to);
  bool in1 = !at_end1 && arc_parameter(a1, q.unit_lift()).real() > 0;
  bool in2 = !at_end2 && arc_parameter(a2, q.unit_lift()).real() > 0;
  if (in1 && in2) {
    out.kind = ArcRelation::Cross;
    return out;
  }
  out.kind = ArcRelation::Disjoint;
  double m = std::numeric_limits<double>::infinity();
  if (!in1) m = std::min(m, clearance(a1));
  if (!in2) m = std::min(m, clearance(a2));
  out.margin = m;
  return out;
}

TangentLine tangent_polar(const BoundaryPoint& p) { return TangentLine{p.lift()}; }

RCircle standard_rcircle() { return RCircle{GroupElement()}; }

bool on_standard_rcircle(const BoundaryPoint& p, double tol) {
  if (p.at_infinity) return true;
  double s = 1.0 + std::abs(p.z);
  return std::abs(p.z.imag()) < tol * s && std::abs(p.t) < tol * s * s;
}

Arc foliation_leaf_rcircle(const BoundaryPoint& p) {
  if (on_standard_rcircle(p)) throw GeometryError(ErrorCode::Degenerate, "point lies on the standard R-circle");
  HVector pl = p.unit_lift();
  HVector m = box(pl, pl.conj());
  Eigen::Index k;
  m.v.cwiseAbs().maxCoeff(&k);
  cplx phase = m[static_cast<int>(k)] / std::abs(m[static_cast<int>(k)]);
  Eigen::Vector3d mr = (m.v / phase).real();
  // Real J-orthogonal complement of mr.
  Eigen::Vector3d w = form_matrix(Model::Siegel) * mr;
  Eigen::JacobiSVD<Eigen::Matrix<double, 1, 3>> svd(w.transpose(), Eigen::ComputeFullV);
  Eigen::Vector3d e1 = svd.matrixV().col(1), e2 = svd.matrixV().col(2);
  const Eigen::Matrix3d& j = form_matrix(Model::Siegel);
  Eigen::Matrix2d g;
  g << e1.dot(j * e1), e1.dot(j * e2), e2.dot(j * e1), e2.dot(j * e2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
  double lneg = es.eigenvalues()(0), lpos = es.eigenvalues()(1);
  if (!(lneg < 0 && lpos > 0)) throw GeometryError(ErrorCode::Degenerate, "leaf plane is not of signature (1,1)");
  Eigen::Vector3d fp = (es.eigenvectors()(0, 1) * e1 + es.eigenvectors()(1, 1) * e2) / std::sqrt(lpos);
  Eigen::Vector3d fm = (es.eigenvectors()(0, 0) * e1 + es.eigenvectors()(1, 0) * e2) / std::sqrt(-lneg);
  auto to_point = [](const Eigen::Vector3d& x) {
    return heis_from_lift(HVector(x.cast<cplx>(), Model::Siegel).unit(), 1e-7);
  };
  BoundaryPoint u = to_point(fp + fm), v = to_point(fp - fm);
  Arc arc{u, v};
  if (arc_parameter(arc, pl).real() > 0) return arc;
  return Arc{v, u};
}

Arc foliation_leaf(const RCircle& r, const BoundaryPoint& p) {
  GroupElement f = r.frame.to_model(Model::Siegel);
  Arc a = foliation_leaf_rcircle(apply(f.inverse(), p));
  return Arc{apply(f, a.from), apply(f, a.to)};
}

CurveSample rcircle_sample(int n) {
  CurveSample s;
  s.closed = true;
  s.source = "rcircle";
  static const Mat3 cinv = cayley_matrix().inverse();
  for (int k = 0; k < n; ++k) {
    double phi = 2 * kPi * k / n;
    Vec3 w(std::cos(phi), std::sin(phi), 1.0);
    Vec3 v = (cinv * w).real().cast<cplx>();
    s.points.push_back(heis_from_lift(HVector(v).unit(), 1e-7));
  }
  return s;
}

CurveSample bent_curve(double theta, int n, double log_range) {
  if (!(theta > 0 && theta < 2 * kPi)) throw GeometryError(ErrorCode::BadInput, "bent_curve needs 0 < theta < 2 pi");
  if (n < 6) throw GeometryError(ErrorCode::BadInput, "bent_curve needs at least 6 points");
  int k2 = (n - 2) / 2, k1 = n - 2 - k2;
  auto radius = [&](int j, int k) { return std::exp(-log_range + 2 * log_range * j / std::max(1, k - 1)); };
  CurveSample s;
  s.closed = true;
  s.source = "bent " + std::to_string(theta);
  s.points.push_back(BoundaryPoint::finite(0.0, 0.0));
  for (int j = 0; j < k1; ++j) s.points.push_back(BoundaryPoint::finite(radius(j, k1), 0.0));
  s.points.push_back(BoundaryPoint::infinity());
  cplx dir = std::polar(1.0, theta);
  for (int j = k2 - 1; j >= 0; --j) s.points.push_back(BoundaryPoint::finite(radius(j, k2) * dir, 0.0));
  return s;
}

CurveSample ccircle_sample(const CCircle& c, int n) {
  auto [e1, e2] = polar_plane(c.polar);
  auto [fp, fm] = null_frame(e1, e2, c.polar.model);
  CurveSample s;
  s.closed = true;
  s.source = "ccircle";
  for (int k = 0; k < n; ++k) {
    Vec3 v = fp + std::polar(1.0, 2 * kPi * k / n) * fm;
    s.points.push_back(heis_from_lift(HVector(v, c.polar.model).unit(), 1e-7));
  }
  return s;
}

BentCertificate bent_certificate(double x, double y, double z, double t, double theta) {
  if ((x == 0 && z == 0) || (y == 0 && t == 0))
    throw GeometryError(ErrorCode::Degenerate, "bent_certificate with a doubled endpoint at the origin");
  cplx e = std::polar(1.0, theta);
  HVector a(-x * x, x, 1.0), b(-y * y, y * e, 1.0), c(-z * z, z, 1.0), d(-t * t, t * e, 1.0);
  HVector n = box(box(a, b), box(c, d));
  double cs = std::cos(theta);
  double al = 16 * x * y * z * t * (x + z) * (y + t);
  double be = 4 * ((x * t + y * z) * (x * t + y * z) + (t * y + x * z) * (t * y + x * z) +
                   2 * (t * x + y * z) * (x * y + t * z)) *
              (t * y + x * z);
  double ga = 4 * ((t * t + 2 * t * y + z * z) * t * y * y * z + (t * t + 2 * x * z + z * z) * t * x * x * z +
                   (x * x + 2 * t * y + y * y) * t * t * x * y + (x * x + y * y + 2 * x * z) * x * y * z * z);
  return {herm_norm(n), (x - z) * (t - y) * (-al * cs * cs + be * cs - ga)};
}

BoundaryPoint spiral_point(double a, double s) {
  cplx z = std::exp(cplx(s, -3.0 * a * s));
  return BoundaryPoint::finite(z, 3.0 * a * std::exp(2.0 * s));
}

CurveSample spiral_curve(double a, double s_min, double s_max, int n) {
  if (!(a > 0) || n < 2 || !(s_max > s_min)) throw GeometryError(ErrorCode::BadInput, "spiral_curve parameters");
  CurveSample c;
  c.closed = true;
  c.source = "spiral " + std::to_string(a);
  c.points.push_back(BoundaryPoint::finite(0.0, 0.0));
  for (int k = 0; k < n; ++k) c.points.push_back(spiral_point(a, s_min + (s_max - s_min) * k / (n - 1)));
  c.points.push_back(BoundaryPoint::infinity());
  return c;
}

MobiusSample mobius_sample(const CurveSample& e) {
  HyperconvexityReport hc = hyperconvexity(e.points);
  if (hc.min_collinearity < 1e-10) {
    const auto& w = hc.witness;
    throw GeometryError(ErrorCode::HyperconvexityViolation,
                        "collinear triple " + w[0].str() + " " + w[1].str() + " " + w[2].str());
  }
  std::vector<HVector> lifts;
  for (const auto& p : e.points) lifts.push_back(p.unit_lift());
  MobiusSample out;
  std::size_t n = lifts.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.images.push_back(lifts[i]);
    for (std::size_t j = i + 1; j < n; ++j) out.images.push_back(box(lifts[i], lifts[j]).unit());
  }
  const auto& im = out.images;
  long m = static_cast<long>(im.size());
  double best = std::numeric_limits<double>::infinity();
  std::size_t wa = 0, wb = 0;
#pragma omp parallel
  {
    double lb = std::numeric_limits<double>::infinity();
    std::size_t la = 0, lbj = 0;
#pragma omp for schedule(dynamic, 16) nowait
    for (long i = 0; i < m; ++i)
      for (long j = i + 1; j < m; ++j) {
        double d = fs_distance(im[i], im[j]);
        if (d < lb) {
          lb = d;
          la = i;
          lbj = j;
        }
      }
#pragma omp critical
    if (lb < best || (lb == best && la < wa)) {
      best = lb;
      wa = la;
      wb = lbj;
    }
  }
  out.injectivity_margin = best;
  out.witness_a = wa;
  out.witness_b = wb;
  return out;
}

double geodesic_foot(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& z) {
  GroupElement g = normalizing_frame(x, y);
  BoundaryPoint w = apply(g, z);
  if (w.at_infinity) throw GeometryError(ErrorCode::Degenerate, "geodesic_foot of an endpoint");
  double h = std::hypot(std::norm(w.z), w.t);
  if (h == 0.0) throw GeometryError(ErrorCode::Degenerate, "geodesic_foot of an endpoint");
  return std::log(h);
}

BoundaryPoint flow_point(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& z) {
  if (same_point(x, y) || same_point(x, z) || same_point(y, z))
    throw GeometryError(ErrorCode::Degenerate, "flow_point needs distinct points");
  GroupElement g = normalizing_frame(x, y);
  double h = std::exp(geodesic_foot(x, y, z));
  return apply(g.inverse(), BoundaryPoint::finite(0.0, h));
}

}  // namespace crs
