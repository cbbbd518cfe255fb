#pragma once

#include "crs/hermitian.hpp"
#include "crs/boundary.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace testsupport {

using crs::BoundaryPoint;
using crs::cplx;
using crs::GroupElement;
using crs::HVector;
using crs::Mat3;
using crs::Model;

inline constexpr double kPi = std::numbers::pi;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed = 20240611) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
  cplx cnormal() { return {normal(), normal()}; }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

  HVector vec(Model m = Model::Siegel) { return HVector(cnormal(), cnormal(), cnormal(), m); }

  // Heisenberg point with log-uniform scale so both small and large coordinates appear.
  BoundaryPoint point() {
    double r = std::exp(uniform(-2.0, 2.0));
    return BoundaryPoint::finite(std::polar(r, uniform(-kPi, kPi)), r * r * uniform(-3.0, 3.0));
  }

  // Product of form-preserving factors: translations, dilations, rotations and the inversion.
  GroupElement su21() {
    Mat3 inversion = Mat3::Zero();
    inversion(0, 2) = 1.0;
    inversion(1, 1) = -1.0;
    inversion(2, 0) = 1.0;
    Mat3 g = Mat3::Identity();
    for (int k = 0; k < 4; ++k) {
      cplx w = 0.7 * cnormal();
      double s = 0.7 * normal();
      Mat3 t = Mat3::Identity();
      t(0, 1) = -2.0 * std::conj(w);
      t(0, 2) = cplx(-std::norm(w), s);
      t(1, 2) = w;
      double lam = 0.5 * normal(), th = uniform(-kPi, kPi);
      Mat3 d = Mat3::Zero();
      d(0, 0) = std::polar(std::exp(lam), th);
      d(1, 1) = std::polar(1.0, -2 * th);
      d(2, 2) = std::polar(std::exp(-lam), th);
      g = g * t * d;
      if (k % 2 == 0) g = g * inversion;
    }
    return GroupElement(g);
  }
};

// Siegel inner product of standard lifts written out in Heisenberg coordinates.
inline cplx heis_inner(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.at_infinity && q.at_infinity) return 0.0;
  if (p.at_infinity) return 1.0;
  if (q.at_infinity) return 1.0;
  return -std::norm(p.z - q.z) + cplx(0.0, p.t - q.t + 2 * std::imag(p.z * std::conj(q.z)));
}

inline double oracle_cartan(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
  return std::arg(-(heis_inner(p, q) * heis_inner(q, r) * heis_inner(r, p)));
}

// Heisenberg group law matching the translation matrices: [w,s]*[z,t].
inline BoundaryPoint heis_mul(cplx w, double s, const BoundaryPoint& p) {
  return BoundaryPoint::finite(w + p.z, s + p.t + 2 * std::imag(std::conj(p.z) * w));
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Projective equality of lifts.
inline double proj_dist(const HVector& a, const HVector& b) { return crs::fs_distance(a, b); }

}  // namespace testsupport
