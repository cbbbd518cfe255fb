#include "support.hpp"

#include <doctest.h>

using namespace crs;
using namespace testsupport;

TEST_CASE("heisenberg coordinates from lifts") {
  BoundaryPoint o = heis_from_lift(HVector(0.0, 0.0, 1.0));
  CHECK_FALSE(o.at_infinity);
  CHECK(std::abs(o.z) == 0.0);
  CHECK(o.t == 0.0);

  BoundaryPoint p = heis_from_lift(HVector(cplx(-1.0, 1.0), 1.0, 1.0));
  CHECK(std::abs(p.z - 1.0) < 1e-15);
  CHECK(p.t == doctest::Approx(1.0));

  CHECK(heis_from_lift(HVector(2.0, 0.0, 0.0)).at_infinity);
  CHECK_THROWS_AS(heis_from_lift(HVector(0.0, 1.0, 0.0)), GeometryError);

  Gen g;
  for (int it = 0; it < 200; ++it) {
    BoundaryPoint q = g.point();
    BoundaryPoint r = heis_from_lift(cplx(0.3, -1.2) * q.lift());
    CHECK(std::abs(r.z - q.z) < 1e-12 * (1 + std::abs(q.z)));
    CHECK(std::abs(r.t - q.t) < 1e-12 * (1 + std::abs(q.t)));
  }
}

TEST_CASE("cartan invariant examples") {
  auto inf = BoundaryPoint::infinity();
  auto o = BoundaryPoint::finite(0.0, 0.0);
  CHECK(std::abs(cartan(inf, o, BoundaryPoint::finite(1.0, 1.0)).angle) == doctest::Approx(kPi / 4));
  CHECK(std::abs(cartan(BoundaryPoint::finite(-1.0, 0.0), o, BoundaryPoint::finite(1.0, 0.0)).angle) < 1e-15);
  CHECK(std::abs(cartan(BoundaryPoint::finite(0.0, -1.0), o, BoundaryPoint::finite(0.0, 1.0)).angle) ==
        doctest::Approx(kPi / 2));

  CartanValue d = cartan(o, o, inf);
  CHECK(d.degenerate);
  CHECK(d.angle == 0.0);
}

TEST_CASE("cartan invariant matches the coordinate formula") {
  Gen g(17);
  for (int it = 0; it < 2000; ++it) {
    BoundaryPoint p = g.point(), q = g.point(), r = it % 7 == 0 ? BoundaryPoint::infinity() : g.point();
    CHECK(std::abs(cartan(p, q, r).angle - oracle_cartan(p, q, r)) < 1e-10);
    HVector lp = cplx(g.normal(), g.normal()) * p.lift();
    CHECK(std::abs(cartan(lp, q.lift(), r.lift()).angle - cartan(p, q, r).angle) < 1e-10);
  }
}

TEST_CASE("cartan range, antisymmetry, cocycle and invariance") {
  Gen g(19);
  for (int it = 0; it < 2000; ++it) {
    BoundaryPoint p = g.point(), q = g.point(), r = g.point(), s = g.point();
    double pqr = cartan(p, q, r).angle;
    CHECK(std::abs(pqr) <= kPi / 2 + 1e-12);
    CHECK(std::abs(pqr + cartan(q, p, r).angle) < 1e-9);
    double cocycle = pqr - cartan(p, q, s).angle + cartan(p, r, s).angle - cartan(q, r, s).angle;
    CHECK(std::abs(cocycle) < 1e-9);
    GroupElement h = g.su21();
    CHECK(std::abs(cartan(apply(h, p), apply(h, q), apply(h, r)).angle - pqr) < 1e-9);
  }
}

TEST_CASE("hyperbolic distance") {
  HVector c(0.0, 0.0, 1.0, Model::Ball);
  CHECK(hyp_distance(c, c) == doctest::Approx(0.0));
  HVector x(std::tanh(1.0), 0.0, 1.0, Model::Ball);
  CHECK(hyp_distance(c, x) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(hyp_distance(c, HVector(1.0, 0.0, 1.0, Model::Ball)), GeometryError);

  Gen g(23);
  for (int it = 0; it < 100; ++it) {
    HVector a(-std::exp(g.normal()) + cplx(0, g.normal()), g.cnormal(), 1.0);
    a = HVector(a[0] - std::norm(a[1]), a[1], a[2]);
    HVector b(-std::exp(g.normal()) - 0.1, 0.3 * g.cnormal(), 1.0);
    if (point_type(a).type != PointType::Negative || point_type(b).type != PointType::Negative) continue;
    GroupElement h = g.su21();
    CHECK(std::abs(hyp_distance(h * a, h * b) - hyp_distance(a, b)) < 1e-9 * (1 + hyp_distance(a, b)));
  }
}

TEST_CASE("orthogonal projection to a complex line") {
  HVector m(0.0, 1.0, 0.0);
  HVector c(cplx(0.4, -0.2), cplx(1.5, 0.5), 1.0);
  ProjectivePoint p = project_to_line(c, m);
  CHECK(proj_dist(p.rep, HVector(cplx(0.4, -0.2), 0.0, 1.0)) < 1e-15);
  ProjectivePoint again = project_to_line(p.rep, m);
  CHECK(proj_dist(again.rep, p.rep) < 1e-15);
  CHECK_THROWS_AS(project_to_line(m, m), GeometryError);
}

namespace {
// Distance from x to the real geodesic with endpoints a, b, by golden section over log-height.
double distance_to_geodesic(const HVector& x, const BoundaryPoint& a, const BoundaryPoint& b) {
  GroupElement f = normalizing_frame(a, b);
  HVector y = f * x;
  auto d = [&](double s) { return hyp_distance(y, HVector(-std::exp(s), 0.0, 1.0)); };
  double lo = -40, hi = 40;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    if (d(m1) < d(m2))
      hi = m2;
    else
      lo = m1;
  }
  return d(0.5 * (lo + hi));
}
}  // namespace

TEST_CASE("cartan angle measures distance from projection to geodesic") {
  Gen g(29);
  for (int it = 0; it < 200; ++it) {
    BoundaryPoint a = g.point(), b = g.point(), c = g.point();
    double A = cartan(a, b, c).angle;
    if (std::abs(A) > 1.5) continue;
    ProjectivePoint p = project_to_line(c.lift(), box(a.lift(), b.lift()));
    REQUIRE(p.type == PointType::Negative);
    CHECK(std::asinh(std::abs(std::tan(A))) == doctest::Approx(distance_to_geodesic(p.rep, a, b)).epsilon(1e-6));
  }
}

TEST_CASE("projection onto a line through two boundary points") {
  auto o = BoundaryPoint::finite(0.0, 0.0), inf = BoundaryPoint::infinity();
  ProjectivePoint s = project_star(BoundaryPoint::finite(1.0, 1.0), o, inf);
  CHECK(std::abs(s.rep[0] / s.rep[2] - cplx(1.0, 1.0)) < 1e-14);
  CHECK(std::abs(s.rep[1]) < 1e-14);

  Gen g(31);
  for (int it = 0; it < 1000; ++it) {
    BoundaryPoint e = g.point();
    ProjectivePoint star = project_star(e, o, inf);
    ProjectivePoint pi = project_to_line(e.lift(), HVector(0.0, 1.0, 0.0));
    cplx zs = star.rep[0] / star.rep[2], zp = pi.rep[0] / pi.rep[2];
    CHECK(std::abs(-zp - std::conj(zs)) < 1e-12 * (1 + std::abs(zp)));
  }
}

TEST_CASE("projection to the tangent line at infinity") {
  auto inf = BoundaryPoint::infinity();
  Gen g(37);
  for (int it = 0; it < 100; ++it) {
    BoundaryPoint m = g.point();
    ProjectivePoint p = project_tangent(inf, m);
    // Orthogonal to infinity and to m; the sign of the first entry is fixed by that.
    CHECK(proj_dist(p.rep, HVector(-2.0 * std::conj(m.z), 1.0, 0.0)) < 1e-12);
    CHECK(std::abs(herm_inner(p.rep, inf.lift())) < 1e-12 * p.rep.norm());
  }
  ProjectivePoint self = project_tangent(inf, inf);
  CHECK(proj_dist(self.rep, inf.lift()) < 1e-15);
}

TEST_CASE("paraboloid margin") {
  CHECK(std::abs(paraboloid_margin(BoundaryPoint::finite(1.0, 1.0), kPi / 4)) < 1e-15);
  CHECK(paraboloid_margin(BoundaryPoint::finite(1.0, 0.0), 0.3) == doctest::Approx(std::tan(0.3)));
  CHECK(paraboloid_margin(BoundaryPoint::finite(0.0, 1.0), 1.2) == doctest::Approx(-1.0));
  CHECK(paraboloid_margin(BoundaryPoint::finite(0.0, 0.0), 1.2) == 0.0);

  Gen g(41);
  auto inf = BoundaryPoint::infinity();
  auto o = BoundaryPoint::finite(0.0, 0.0);
  for (int it = 0; it < 2000; ++it) {
    BoundaryPoint p = g.point();
    double alpha = g.uniform(0.0, 1.5);
    double a = std::abs(cartan(inf, o, p).angle);
    if (std::abs(a - alpha) < 1e-9) continue;
    CHECK((paraboloid_margin(p, alpha) >= 0) == (a <= alpha + 1e-9));
  }
}

TEST_CASE("chordal distance") {
  auto inf = BoundaryPoint::infinity();
  auto o = BoundaryPoint::finite(0.0, 0.0);
  CHECK(chordal(inf, o) == doctest::Approx(2.0));
  CHECK(chordal(o, o) == 0.0);
  Eigen::Vector4d x = ball_coordinates(BoundaryPoint::finite({0.3, 0.2}, -1.0));
  CHECK(x.norm() == doctest::Approx(1.0));
}
