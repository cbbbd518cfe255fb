#include "crs/circles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace crs {

namespace {

struct Candidate {
  BoundaryPoint a, b;
  double residual;
};

// |det| divided by the separation of a and b, so that a = b is not a spurious root.
cplx scaled_det(const HVector& p, const BoundaryPoint& a, const BoundaryPoint& b) {
  HVector la = a.unit_lift(), lb = b.unit_lift();
  double sep = fs_distance(la, lb);
  if (sep < 1e-9) return std::numeric_limits<double>::infinity();
  return det3(p, la, lb) / sep;
}

double collinearity(const HVector& p, const BoundaryPoint& a, const BoundaryPoint& b) {
  return std::abs(scaled_det(p, a, b));
}

BoundaryPoint ray_point(double u, double phi) { return BoundaryPoint::finite(std::polar(std::exp(u), phi), 0.0); }

Eigen::Vector2d residual_vec(const HVector& p, double u, double v, double phi_a, double phi_b) {
  cplx d = scaled_det(p, ray_point(u, phi_a), ray_point(v, phi_b));
  return {d.real(), d.imag()};
}

// Damped Newton on (log x, log y) for collinearity of p with [x e^{i phi_a},0] and [y e^{i phi_b},0].
bool newton(const HVector& p, double phi_a, double phi_b, double& u, double& v) {
  constexpr double h = 1e-6;
  Eigen::Vector2d f = residual_vec(p, u, v, phi_a, phi_b);
  for (int it = 0; it < 100; ++it) {
    if (f.norm() < 1e-15) return true;
    Eigen::Matrix2d jac;
    jac.col(0) = (residual_vec(p, u + h, v, phi_a, phi_b) - residual_vec(p, u - h, v, phi_a, phi_b)) / (2 * h);
    jac.col(1) = (residual_vec(p, u, v + h, phi_a, phi_b) - residual_vec(p, u, v - h, phi_a, phi_b)) / (2 * h);
    Eigen::Vector2d step = jac.fullPivLu().solve(-f);
    if (!step.allFinite()) return false;
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k) {
      double nu = u + lambda * step(0), nv = v + lambda * step(1);
      Eigen::Vector2d nf = residual_vec(p, nu, nv, phi_a, phi_b);
      if (nf.norm() < f.norm()) {
        u = nu;
        v = nv;
        f = nf;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
    if (std::abs(u) > 40 || std::abs(v) > 40) return false;
  }
  return f.norm() < 1e-11;
}

// With a = [x e^{i phi_a},0], b = [y e^{i phi_b},0] and y fixed, det(p,a,b) is a complex
// quadratic in x. It has a real root iff the resultant of its real and imaginary parts
// vanishes, so a 1D sign-change scan over log y finds every transversal crossing.
void cross_branch(const HVector& p, double phi_a, double phi_b, std::vector<Candidate>& out) {
  const cplx ea = std::polar(1.0, phi_a), eb = std::polar(1.0, phi_b);
  auto coeffs = [&](double y) {
    return std::array<cplx, 3>{-p[0] * y * eb - p[1] * y * y, (p[0] + p[2] * y * y) * ea, p[1] - p[2] * y * eb};
  };
  // Opposite rays: x = y eb/ea is the trivial root a = b; deflate it and keep the linear factor.
  const bool opposite = std::abs(std::sin(phi_b - phi_a)) < 1e-12;
  const double ratio = (eb / ea).real();
  auto resultant = [&](double v, double* x) {
    double y = std::exp(v);
    auto c = coeffs(y);
    if (opposite) {
      cplx lin = c[1] + c[2] * (ratio * y);
      if (x) *x = -(std::conj(c[2]) * lin).real() / std::norm(c[2]);
      return (std::conj(c[2]) * lin).imag() / (std::norm(c[2]) + std::norm(lin));
    }
    double a0 = c[0].real(), a1 = c[1].real(), a2 = c[2].real();
    double b0 = c[0].imag(), b1 = c[1].imag(), b2 = c[2].imag();
    double m20 = a2 * b0 - a0 * b2, m21 = a2 * b1 - a1 * b2, m10 = a1 * b0 - a0 * b1;
    double scale = std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(b0), std::abs(b1), std::abs(b2)});
    if (x) *x = -m20 / m21;
    return (m20 * m20 - m21 * m10) / (scale * scale * scale * scale);
  };
  auto accept = [&](double v) {
    double x = 0;
    resultant(v, &x);
    if (!std::isfinite(x) || x <= 0) return;
    double u = std::log(x);
    newton(p, phi_a, phi_b, u, v);
    BoundaryPoint pa = ray_point(u, phi_a), pb = ray_point(v, phi_b);
    double res = collinearity(p, pa, pb);
    if (std::isfinite(res)) out.push_back({pa, pb, res});
  };
  constexpr int n = 8000;
  constexpr double lo = -20.0, hi = 20.0;
  std::vector<double> vs(n + 1), rs(n + 1);
  for (int k = 0; k <= n; ++k) {
    vs[k] = lo + (hi - lo) * k / n;
    rs[k] = resultant(vs[k], nullptr);
  }
  for (int k = 1; k <= n; ++k) {
    if (std::signbit(rs[k]) != std::signbit(rs[k - 1])) {
      double a = vs[k - 1], b = vs[k], ra = rs[k - 1];
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b), rm = resultant(m, nullptr);
        if (std::signbit(rm) == std::signbit(ra)) {
          a = m;
          ra = rm;
        } else {
          b = m;
        }
      }
      accept(0.5 * (a + b));
    } else if (k < n && std::abs(rs[k]) < std::abs(rs[k - 1]) && std::abs(rs[k]) <= std::abs(rs[k + 1]) &&
               std::signbit(rs[k]) == std::signbit(rs[k + 1])) {
      // double root: no sign change, refine the minimum of |R| instead
      double a = vs[k - 1], b = vs[k + 1];
      const double gr = 0.5 * (std::sqrt(5.0) - 1);
      for (int it = 0; it < 100; ++it) {
        double m1 = b - gr * (b - a), m2 = a + gr * (b - a);
        if (std::abs(resultant(m1, nullptr)) < std::abs(resultant(m2, nullptr)))
          b = m2;
        else
          a = m1;
      }
      accept(0.5 * (a + b));
    }
  }
}

void same_branch(const BoundaryPoint& p, double phi, std::vector<Candidate>& out) {
  BoundaryPoint q = BoundaryPoint::finite(p.z * std::polar(1.0, -phi), p.t);
  if (on_standard_rcircle(q, 1e-12)) return;
  Arc leaf = foliation_leaf_rcircle(q);
  if (leaf.from.at_infinity || leaf.to.at_infinity) return;
  if (leaf.from.z.real() <= 0 || leaf.to.z.real() <= 0) return;
  BoundaryPoint a = ray_point(std::log(leaf.from.z.real()), phi), b = ray_point(std::log(leaf.to.z.real()), phi);
  out.push_back({a, b, collinearity(p.unit_lift(), a, b)});
}

void through_special(const BoundaryPoint& p, double phi, std::vector<Candidate>& out) {
  HVector l = p.lift();
  cplx dir = std::polar(1.0, phi);
  // Vertical line over a branch point: endpoints infinity and [z,0].
  cplx w = p.z / dir;
  if (std::abs(w) > 0 && std::abs(w.imag()) < 1e-12 * std::abs(w) && w.real() > 0) {
    BoundaryPoint b = BoundaryPoint::finite(p.z, 0.0);
    out.push_back({BoundaryPoint::infinity(), b, collinearity(p.unit_lift(), BoundaryPoint::infinity(), b)});
  }
  // Chain through the origin: y = -p1 e^{i phi} / p2.
  if (std::abs(l[1]) > 0) {
    cplx y = -l[0] * dir / l[1];
    if (std::abs(y.imag()) < 1e-12 * std::abs(y) && y.real() > 0) {
      BoundaryPoint a = BoundaryPoint::finite(0.0, 0.0), b = BoundaryPoint::finite(y.real() * dir, 0.0);
      out.push_back({a, b, collinearity(p.unit_lift(), a, b)});
    }
  }
}

bool on_ray(const BoundaryPoint& p, double phi) {
  if (std::abs(p.t) > 1e-12 * (1 + std::norm(p.z))) return false;
  cplx w = p.z * std::polar(1.0, -phi);
  return std::abs(w.imag()) <= 1e-12 * (1 + std::abs(w)) && w.real() >= 0;
}

}  // namespace

BentLeaf bent_leaf(const BoundaryPoint& p, double theta) {
  constexpr double pi = std::numbers::pi;
  if (theta < pi / 2 - 1e-12 || theta > 3 * pi / 2 + 1e-12)
    throw GeometryError(ErrorCode::ParamOutOfRange, "bent_leaf needs theta in [pi/2, 3pi/2]");
  if (p.at_infinity || on_ray(p, 0.0) || on_ray(p, theta))
    throw GeometryError(ErrorCode::Degenerate, "point lies on the bent curve");
  HVector pl = p.unit_lift();
  std::vector<Candidate> cand;
  if (std::abs(p.z) <= 1e-13 * (1 + std::sqrt(std::abs(p.t)))) {
    BoundaryPoint o = BoundaryPoint::finite(0.0, 0.0), inf = BoundaryPoint::infinity();
    cand.push_back({o, inf, collinearity(pl, o, inf)});
  } else {
    for (double phi : {0.0, theta}) {
      through_special(p, phi, cand);
      same_branch(p, phi, cand);
    }
    cross_branch(pl, 0.0, theta, cand);
  }
  if (cand.empty())
    throw GeometryError(ErrorCode::NoConvergence, "no bent leaf found through " + p.str());
  std::vector<Candidate> uniq;
  for (const auto& c : cand) {
    bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const Candidate& u) {
      return (chordal(u.a, c.a) < 1e-6 && chordal(u.b, c.b) < 1e-6) ||
             (chordal(u.a, c.b) < 1e-6 && chordal(u.b, c.a) < 1e-6);
    });
    if (!dup) uniq.push_back(c);
  }
  auto best = *std::min_element(uniq.begin(), uniq.end(),
                                [](const Candidate& x, const Candidate& y) { return x.residual < y.residual; });
  BentLeaf out;
  out.residual = best.residual;
  out.candidates = static_cast<int>(uniq.size());
  Arc arc{best.a, best.b};
  out.arc = arc_parameter(arc, pl).real() > 0 ? arc : Arc{best.b, best.a};
  return out;
}

}  // namespace crs
