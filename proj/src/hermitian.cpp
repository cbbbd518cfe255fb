#include "crs/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

namespace crs {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ModelMismatch: return "MODEL_MISMATCH";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::WrongType: return "WRONG_TYPE";
    case ErrorCode::Indeterminate: return "INDETERMINATE";
    case ErrorCode::ParamOutOfRange: return "PARAM_OUT_OF_RANGE";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::NotLoxodromic: return "NOT_LOXODROMIC";
    case ErrorCode::NoLoxodromic: return "NO_LOXODROMIC";
    case ErrorCode::HyperconvexityViolation: return "HYPERCONVEXITY_VIOLATION";
    case ErrorCode::Crossing: return "CROSSING";
    case ErrorCode::BadInput: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

const char* to_string(PointType t) {
  switch (t) {
    case PointType::Negative: return "NEGATIVE";
    case PointType::Null: return "NULL";
    case PointType::Positive: return "POSITIVE";
  }
  return "?";
}

const char* to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Loxodromic: return "LOXODROMIC";
    case ElementClass::Parabolic: return "PARABOLIC";
    case ElementClass::Elliptic: return "ELLIPTIC";
    case ElementClass::Identity: return "IDENTITY";
  }
  return "?";
}

namespace {

Eigen::Matrix3d make_ball() {
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  j.diagonal() << 1, 1, -1;
  return j;
}

Eigen::Matrix3d make_siegel() {
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  j(0, 2) = 1;
  j(1, 1) = 2;
  j(2, 0) = 1;
  return j;
}

void require_same(const HVector& a, const HVector& b) {
  if (a.model != b.model) throw GeometryError(ErrorCode::ModelMismatch, "vectors live in different models");
}

constexpr double kPi = std::numbers::pi;

}  // namespace

const Eigen::Matrix3d& form_matrix(Model m) {
  static const Eigen::Matrix3d ball = make_ball();
  static const Eigen::Matrix3d siegel = make_siegel();
  return m == Model::Ball ? ball : siegel;
}

const Eigen::Matrix3d& form_inverse(Model m) {
  static const Eigen::Matrix3d ball = make_ball().inverse();
  static const Eigen::Matrix3d siegel = make_siegel().inverse();
  return m == Model::Ball ? ball : siegel;
}

double box_scale(Model m) { return -1.0 / form_matrix(m).determinant(); }

HVector operator+(const HVector& a, const HVector& b) {
  require_same(a, b);
  return HVector(a.v + b.v, a.model);
}

HVector operator-(const HVector& a, const HVector& b) {
  require_same(a, b);
  return HVector(a.v - b.v, a.model);
}

HVector operator*(cplx s, const HVector& a) { return HVector(s * a.v, a.model); }

cplx herm_inner(const HVector& a, const HVector& b) {
  require_same(a, b);
  const Eigen::Matrix3d& j = form_matrix(a.model);
  return b.v.dot(j.cast<cplx>() * a.v);
}

HVector box(const HVector& a, const HVector& b) {
  require_same(a, b);
  // Written out: Eigen 3.4 conjugates complex cross products.
  const Vec3& x = a.v;
  const Vec3& y = b.v;
  Vec3 c(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
  Vec3 r = (form_inverse(a.model).cast<cplx>() * c).conjugate();
  return HVector(r, a.model);
}

bool is_zero(const HVector& a, double rel) { return a.v.norm() <= rel; }

cplx det3(const HVector& a, const HVector& b, const HVector& c) {
  require_same(a, b);
  require_same(a, c);
  Mat3 m;
  m.col(0) = a.v;
  m.col(1) = b.v;
  m.col(2) = c.v;
  return m.determinant();
}

ProjectivePoint point_type(const HVector& v, double tol_null) {
  double n2 = v.v.squaredNorm();
  if (n2 == 0.0) throw GeometryError(ErrorCode::ZeroVector, "point_type of the zero vector");
  double margin = herm_norm(v) / n2;
  ProjectivePoint p{v, PointType::Null, margin};
  if (margin > tol_null)
    p.type = PointType::Positive;
  else if (margin < -tol_null)
    p.type = PointType::Negative;
  return p;
}

HVector standard_lift(const HVector& v) {
  double n = v.v.norm();
  if (n == 0.0) throw GeometryError(ErrorCode::ZeroVector, "standard_lift of the zero vector");
  if (std::abs(v.v(2)) > 1e-14 * n) return HVector(v.v / v.v(2), v.model);
  Eigen::Index k;
  v.v.cwiseAbs().maxCoeff(&k);
  return HVector(v.v / v.v(k), v.model);
}

double fs_distance(const HVector& a, const HVector& b) {
  // norm of the component of a orthogonal to b; no cancellation near zero
  Vec3 x = a.v / a.v.norm(), y = b.v / b.v.norm();
  return (x - y.dot(x) * y).norm();
}

const Mat3& cayley_matrix() {
  static const Mat3 c = [] {
    const double s = std::sqrt(0.5);
    Mat3 m = Mat3::Zero();
    m(0, 0) = s;
    m(0, 2) = s;
    m(1, 1) = std::sqrt(2.0);
    m(2, 0) = s;
    m(2, 2) = -s;
    return m;
  }();
  return c;
}

HVector cayley(Model from, Model to, const HVector& v) {
  if (v.model != from) throw GeometryError(ErrorCode::ModelMismatch, "cayley source model");
  if (from == to) return v;
  static const Mat3 inv = cayley_matrix().inverse();
  if (from == Model::Siegel) return HVector(cayley_matrix() * v.v, Model::Ball);
  return HVector(inv * v.v, Model::Siegel);
}

GroupElement GroupElement::inverse() const { return GroupElement(matrix.inverse(), model); }

GroupElement GroupElement::unimodular() const {
  cplx d = matrix.determinant();
  if (std::abs(d) == 0.0) throw GeometryError(ErrorCode::Degenerate, "singular matrix");
  return GroupElement(matrix / std::pow(d, 1.0 / 3.0), model);
}

double GroupElement::form_defect() const {
  Mat3 j = form_matrix(model).cast<cplx>();
  return (matrix.adjoint() * j * matrix - j).norm();
}

HVector GroupElement::operator*(const HVector& v) const {
  if (v.model != model) throw GeometryError(ErrorCode::ModelMismatch, "element and vector models differ");
  return HVector(matrix * v.v, model);
}

GroupElement GroupElement::to_model(Model m) const {
  if (m == model) return *this;
  const Mat3& c = cayley_matrix();
  if (model == Model::Siegel) return GroupElement(c * matrix * c.inverse(), Model::Ball);
  return GroupElement(c.inverse() * matrix * c, Model::Siegel);
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.model != b.model) throw GeometryError(ErrorCode::ModelMismatch, "product across models");
  return GroupElement(a.matrix * b.matrix, a.model);
}

namespace {

// Roots of x^3 - tau x^2 + conj(tau) x - 1, the characteristic polynomial of SU(2,1).
std::array<cplx, 3> su21_eigenvalues(cplx tau) {
  Mat3 comp = Mat3::Zero();
  comp(0, 0) = tau;
  comp(0, 1) = -std::conj(tau);
  comp(0, 2) = 1.0;
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Mat3> es(comp, false);
  std::array<cplx, 3> out;
  for (int i = 0; i < 3; ++i) {
    cplx x = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      cplx p = ((x - tau) * x + std::conj(tau)) * x - 1.0;
      cplx dp = (3.0 * x - 2.0 * tau) * x + std::conj(tau);
      if (std::abs(dp) < 1e-12) break;
      cplx nx = x - p / dp;
      cplx np = ((nx - tau) * nx + std::conj(tau)) * nx - 1.0;
      if (std::abs(np) >= std::abs(p)) break;
      x = nx;
    }
    out[i] = x;
  }
  return out;
}

HVector kernel_vector(const Mat3& m, cplx lambda, Model model) {
  Mat3 a = m - lambda * Mat3::Identity();
  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullV);
  return standard_lift(HVector(svd.matrixV().col(2), model));
}

double reduce_third(double theta) {
  while (theta > kPi / 3) theta -= 2 * kPi / 3;
  while (theta <= -kPi / 3) theta += 2 * kPi / 3;
  return theta;
}

}  // namespace

Classification classify(const GroupElement& g) {
  GroupElement u = g.unimodular();
  const Mat3& m = u.matrix;
  double scale = std::max(1.0, m.norm());
  Classification c;
  c.trace = m.trace();
  // A triple eigenvalue splits by eps^(1/3) under rounding; decide it from the trace.
  for (int k = 0; k < 3; ++k) {
    cplx w = std::polar(1.0, 2 * kPi * k / 3);
    if (std::abs(c.trace - 3.0 * w) < 1e-14 * scale * scale) {
      double off = (m - w * Mat3::Identity()).norm();
      c.cls = off < 1e-8 * scale ? ElementClass::Identity : ElementClass::Parabolic;
      return c;
    }
  }
  auto ev = su21_eigenvalues(c.trace);
  std::array<double, 3> mod{std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])};
  int imax = static_cast<int>(std::max_element(mod.begin(), mod.end()) - mod.begin());
  int imin = static_cast<int>(std::min_element(mod.begin(), mod.end()) - mod.begin());
  c.max_modulus = mod[imax];

  if (mod[imax] > 1.0 + tol::lox_confident) {
    c.cls = ElementClass::Loxodromic;
    c.rotation_factor = 3.0 * reduce_third(std::arg(ev[imax]));
    c.fixed_points = std::make_pair(kernel_vector(m, ev[imax], g.model), kernel_vector(m, ev[imin], g.model));
    return c;
  }
  if (mod[imax] > 1.0 + tol::lox)
    throw GeometryError(ErrorCode::Indeterminate,
                        "largest eigenvalue modulus " + std::to_string(mod[imax]) + " inside the tolerance band");

  constexpr double cluster = 1e-5;
  double d01 = std::abs(ev[0] - ev[1]), d02 = std::abs(ev[0] - ev[2]), d12 = std::abs(ev[1] - ev[2]);
  if (d01 < cluster && d02 < cluster && d12 < cluster) {
    cplx mu = (ev[0] + ev[1] + ev[2]) / 3.0;
    mu /= std::abs(mu);
    double off = (m - mu * Mat3::Identity()).norm();
    c.cls = off < 1e-8 * scale ? ElementClass::Identity : ElementClass::Parabolic;
    return c;
  }
  int pair = -1;
  cplx mu;
  if (d01 < cluster) {
    pair = 2;
    mu = 0.5 * (ev[0] + ev[1]);
  } else if (d02 < cluster) {
    pair = 1;
    mu = 0.5 * (ev[0] + ev[2]);
  } else if (d12 < cluster) {
    pair = 0;
    mu = 0.5 * (ev[1] + ev[2]);
  }
  if (pair < 0) {
    c.cls = ElementClass::Elliptic;
    return c;
  }
  Eigen::JacobiSVD<Mat3> svd(m - mu * Mat3::Identity());
  c.cls = svd.singularValues()(1) < 1e-6 * scale ? ElementClass::Elliptic : ElementClass::Parabolic;
  return c;
}

bool is_real_loxodromic(const GroupElement& g) {
  Classification c = classify(g);
  if (c.cls != ElementClass::Loxodromic) throw GeometryError(ErrorCode::NotLoxodromic, "is_real_loxodromic");
  auto ev = su21_eigenvalues(c.trace);
  cplx lmax = *std::max_element(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  double arg = std::arg(lmax);
  cplx shift = std::polar(1.0, reduce_third(arg) - arg);
  cplx t = shift * c.trace;
  return std::abs(t.imag()) < tol::trace * std::max(1.0, std::abs(t));
}

double projective_distance(const GroupElement& a, const GroupElement& b) {
  Mat3 ma = a.unimodular().matrix, mb = b.unimodular().matrix;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    cplx w = std::polar(1.0, 2 * kPi * k / 3);
    best = std::min(best, (ma - w * mb).norm());
  }
  return best / std::max(1.0, ma.norm());
}

}  // namespace crs
