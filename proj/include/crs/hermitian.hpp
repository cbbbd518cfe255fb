#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace crs {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

enum class ErrorCode {
  ModelMismatch,
  ZeroVector,
  WrongType,
  Indeterminate,
  ParamOutOfRange,
  Degenerate,
  NoConvergence,
  NotLoxodromic,
  NoLoxodromic,
  HyperconvexityViolation,
  Crossing,
  BadInput,
};

const char* to_string(ErrorCode c);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace tol {
inline constexpr double null_rel = 1e-9;
inline constexpr double form = 1e-9;
inline constexpr double det = 1e-9;
inline constexpr double lox = 1e-7;
// Above this the loxodromic verdict does not depend on root-finding noise.
inline constexpr double lox_confident = 1e-5;
inline constexpr double trace = 1e-9;
inline constexpr double dedup = 1e-6;
}  // namespace tol

enum class Model { Ball, Siegel };

const Eigen::Matrix3d& form_matrix(Model m);
const Eigen::Matrix3d& form_inverse(Model m);

// -1/det(J); the box-product expansion identities pick up this factor.
double box_scale(Model m);

struct HVector {
  Vec3 v = Vec3::Zero();
  Model model = Model::Siegel;

  HVector() = default;
  HVector(const Vec3& x, Model m = Model::Siegel) : v(x), model(m) {}
  HVector(cplx a, cplx b, cplx c, Model m = Model::Siegel) : model(m) { v << a, b, c; }

  cplx operator[](int i) const { return v(i); }
  double norm() const { return v.norm(); }
  HVector unit() const { return HVector(v / v.norm(), model); }
  HVector conj() const { return HVector(v.conjugate(), model); }
};

HVector operator+(const HVector& a, const HVector& b);
HVector operator-(const HVector& a, const HVector& b);
HVector operator*(cplx s, const HVector& a);

// <a,b> = b^dagger J a
cplx herm_inner(const HVector& a, const HVector& b);
inline double herm_norm(const HVector& a) { return herm_inner(a, a).real(); }

// conj(J^{-1} (a x b)); zero when a and b are proportional.
HVector box(const HVector& a, const HVector& b);
bool is_zero(const HVector& a, double rel = 1e-14);

cplx det3(const HVector& a, const HVector& b, const HVector& c);

enum class PointType { Negative, Null, Positive };
const char* to_string(PointType t);

struct ProjectivePoint {
  HVector rep;
  PointType type = PointType::Null;
  double type_margin = 0.0;
};

ProjectivePoint point_type(const HVector& v, double tol_null = tol::null_rel);

// Third coordinate 1 when nonzero, else scaled to (1,0,0) (Siegel).
HVector standard_lift(const HVector& v);

// Fubini-Study chordal distance on CP^2 (sine of the angle between lines).
double fs_distance(const HVector& a, const HVector& b);

// Map between the models: C^dagger H_B C = H_S with C sending Siegel to ball.
const Mat3& cayley_matrix();
HVector cayley(Model from, Model to, const HVector& v);

enum class ElementClass { Loxodromic, Parabolic, Elliptic, Identity };
const char* to_string(ElementClass c);

struct GroupElement {
  Mat3 matrix = Mat3::Identity();
  Model model = Model::Siegel;

  GroupElement() = default;
  explicit GroupElement(const Mat3& m, Model md = Model::Siegel) : matrix(m), model(md) {}

  cplx det() const { return matrix.determinant(); }
  GroupElement inverse() const;
  GroupElement unimodular() const;
  double form_defect() const;
  HVector operator*(const HVector& v) const;
  GroupElement to_model(Model m) const;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

struct Classification {
  ElementClass cls = ElementClass::Identity;
  double rotation_factor = 0.0;
  // (attracting, repelling), standard lifts
  std::optional<std::pair<HVector, HVector>> fixed_points;
  double max_modulus = 1.0;
  cplx trace{3.0, 0.0};
};

Classification classify(const GroupElement& g);
bool is_real_loxodromic(const GroupElement& g);

// Projective distance modulo the three central lifts, normalized by the matrix size.
double projective_distance(const GroupElement& a, const GroupElement& b);

}  // namespace crs
