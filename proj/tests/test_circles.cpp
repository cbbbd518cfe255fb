#include "support.hpp"

#include "crs/circles.hpp"
#include "crs/groups.hpp"

#include <doctest.h>

using namespace crs;
using namespace testsupport;

namespace {
const BoundaryPoint kO = BoundaryPoint::finite(0.0, 0.0);
const BoundaryPoint kInf = BoundaryPoint::infinity();
}  // namespace

TEST_CASE("chains through two points") {
  CHECK(proj_dist(ccircle_through(kO, kInf).polar, HVector(0.0, 1.0, 0.0)) < 1e-15);
  CCircle c = ccircle_through(BoundaryPoint::finite(1.0, 0.0), BoundaryPoint::finite(-1.0, 0.0));
  CHECK(proj_dist(c.polar, HVector(1.0, 0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(ccircle_through(kO, kO), GeometryError);

  Gen g(43);
  for (int it = 0; it < 200; ++it) {
    BoundaryPoint a = g.point(), b = g.point();
    CCircle k = ccircle_through(a, b);
    CHECK(point_type(k.polar).type == PointType::Positive);
    CHECK(on_ccircle_residual(k, a) < 1e-12);
    CHECK(on_ccircle_residual(k, b) < 1e-12);
    GroupElement h = g.su21();
    CHECK(proj_dist(ccircle_through(apply(h, a), apply(h, b)).polar, h * k.polar) < 1e-9);
  }
}

TEST_CASE("intersection of chains") {
  CCircle axis = ccircle_through(kO, kInf);
  CircleMeet d = ccircles_intersect(axis, ccircle_through(BoundaryPoint::finite(1.0, 0.0), BoundaryPoint::finite(-1.0, 0.0)));
  CHECK(d.kind == CircleMeet::Disjoint);
  CHECK(d.margin < 0);

  CircleMeet m = ccircles_intersect(axis, ccircle_through(BoundaryPoint::finite(1.0, 0.0), kInf));
  CHECK(m.kind == CircleMeet::Meet);
  REQUIRE(m.point);
  CHECK(proj_dist(*m.point, HVector(1.0, 0.0, 0.0)) < 1e-15);

  CHECK(ccircles_intersect(axis, axis).kind == CircleMeet::Equal);
}

TEST_CASE("arc chart") {
  Arc arc{BoundaryPoint::finite(1.0, 0.0), BoundaryPoint::finite(-1.0, 0.0)};
  // Exactly one of [i,0], [-i,0] is on this half of the chain.
  double ti = arc_parameter(arc, BoundaryPoint::finite(cplx(0, 1), 0.0).lift()).real();
  double tm = arc_parameter(arc, BoundaryPoint::finite(cplx(0, -1), 0.0).lift()).real();
  CHECK(ti * tm < 0);
  BoundaryPoint mid = arc_point(arc, std::max(ti, tm));
  CHECK(std::abs(mid.z.real()) < 1e-14);
  CHECK(std::abs(std::abs(mid.z) - 1.0) < 1e-14);
  CHECK_THROWS_AS(arc_point(arc, 0.0), GeometryError);

  Gen g(47);
  for (int it = 0; it < 100; ++it) {
    Arc a{g.point(), g.point()};
    Arc rev{a.to, a.from};
    CCircle c = support(a);
    for (int k = 0; k < 10; ++k) {
      double t = std::exp(g.uniform(-8, 8));
      BoundaryPoint p = arc_point(a, t);
      CHECK(on_ccircle_residual(c, p) < 1e-9);
      CHECK(arc_parameter(a, p.lift()).real() == doctest::Approx(t).epsilon(1e-6));
      CHECK(arc_contains(a, p));
      CHECK_FALSE(arc_contains(rev, p));
    }
    GroupElement h = g.su21();
    Arc ha{apply(h, a.from), apply(h, a.to)};
    BoundaryPoint p = arc_point(a, 1.0);
    CHECK(arc_contains(ha, apply(h, p)));
  }
}

TEST_CASE("arc relations") {
  Gen g(53);
  Arc a{g.point(), g.point()};
  ArcRelation opp = arcs_intersect(a, Arc{a.to, a.from});
  CHECK(opp.kind == ArcRelation::SameSupport);
  CHECK(opp.support == ArcRelation::Opposite);
  CHECK(arcs_intersect(a, a).support == ArcRelation::Equal);

  Arc l1 = foliation_leaf_rcircle(BoundaryPoint::finite(cplx(0, 1), 0.0));
  Arc l2 = foliation_leaf_rcircle(BoundaryPoint::finite(cplx(0.5, 2), 0.3));
  CHECK(arcs_intersect(l1, l2).kind == ArcRelation::Disjoint);

  // Two chains through the origin meet there: shared endpoint.
  Arc s1{kO, BoundaryPoint::finite(1.0, 0.0)}, s2{kO, BoundaryPoint::finite(cplx(0, 1), 0.0)};
  CHECK(arcs_intersect(s1, s2).kind == ArcRelation::ShareEndpoint);
}

TEST_CASE("leaves of the standard R-circle foliation") {
  Arc leaf = foliation_leaf_rcircle(BoundaryPoint::finite(cplx(0, 1), 0.0));
  bool ends = (std::abs(leaf.from.z - 1.0) < 1e-12 && std::abs(leaf.to.z + 1.0) < 1e-12) ||
              (std::abs(leaf.from.z + 1.0) < 1e-12 && std::abs(leaf.to.z - 1.0) < 1e-12);
  CHECK(ends);
  CHECK(proj_dist(support(leaf).polar, HVector(1.0, 0.0, 1.0)) < 1e-12);
  CHECK(arc_contains(leaf, BoundaryPoint::finite(cplx(0, 1), 0.0)));

  Arc conj_leaf = foliation_leaf_rcircle(BoundaryPoint::finite(cplx(0, -1), 0.0));
  ArcRelation r = arcs_intersect(leaf, conj_leaf);
  CHECK(r.kind == ArcRelation::SameSupport);
  CHECK(r.support == ArcRelation::Opposite);

  CHECK_THROWS_AS(foliation_leaf_rcircle(BoundaryPoint::finite(2.0, 0.0)), GeometryError);

  Gen g(59);
  for (int it = 0; it < 300; ++it) {
    BoundaryPoint p = g.point();
    Arc l = foliation_leaf_rcircle(p);
    CHECK(on_ccircle_residual(support(l), p) < 1e-8);
    CHECK(arc_contains(l, p));
    for (const BoundaryPoint& e : {l.from, l.to}) {
      CHECK(on_standard_rcircle(e, 1e-9));
    }
  }
}

TEST_CASE("bent curves") {
  CurveSample pi = bent_curve(kPi, 50);
  for (const auto& p : pi.points) CHECK(on_standard_rcircle(p, 1e-12));
  CurveSample q = bent_curve(kPi / 2, 50);
  int on_imaginary = 0;
  for (const auto& p : q.points)
    if (!p.at_infinity && std::abs(p.z.real()) < 1e-12 && std::abs(p.z) > 0) ++on_imaginary;
  CHECK(on_imaginary > 0);
}

TEST_CASE("bent certificate") {
  // Frozen from an evaluation of both sides at a rational point.
  BentCertificate c = bent_certificate(1, 1, 2, 2, kPi / 2);
  CHECK(c.direct == doctest::Approx(72.0).epsilon(1e-12));
  CHECK(c.factored == doctest::Approx(576.0).epsilon(1e-12));
  CHECK(c.direct == doctest::Approx(kBentKappa * c.factored).epsilon(1e-9));

  BentCertificate z = bent_certificate(1.5, 0.7, 1.5, 2.0, 2.5);
  CHECK(std::abs(z.direct) < 1e-12);
  CHECK(std::abs(z.factored) < 1e-12);

  Gen g(61);
  for (int it = 0; it < 2000; ++it) {
    double x = g.uniform(0.1, 5), y = g.uniform(0.1, 5), zz = g.uniform(0.1, 5), t = g.uniform(0.1, 5);
    double th = g.uniform(kPi / 2, 3 * kPi / 2);
    BentCertificate b = bent_certificate(x, y, zz, t, th);
    CHECK(std::abs(b.direct - kBentKappa * b.factored) <= 1e-9 * std::max(1.0, std::abs(b.direct)));
    if (std::abs(x - zz) > 1e-3 && std::abs(t - y) > 1e-3) CHECK(std::abs(b.direct) > 0);
    BentCertificate r = bent_certificate(x, y, zz, t, kPi);
    if (std::abs(x - zz) > 1e-3 && std::abs(t - y) > 1e-3) CHECK(std::abs(r.direct) > 0);
  }
}

TEST_CASE("bent leaves") {
  SUBCASE("unbent parameter reproduces the R-circle foliation") {
    Gen g(67);
    for (int it = 0; it < 100; ++it) {
      BoundaryPoint p = g.point();
      Arc a = bent_leaf(p, kPi).arc, b = foliation_leaf_rcircle(p);
      bool same = (chordal(a.from, b.from) < 1e-7 && chordal(a.to, b.to) < 1e-7);
      CHECK(same);
    }
  }
  SUBCASE("point on the vertical axis") {
    for (double th : {kPi / 2, kPi, 1.3 * kPi}) {
      BentLeaf l = bent_leaf(BoundaryPoint::finite(0.0, 1.0), th);
      bool ends = (chordal(l.arc.from, kO) < 1e-12 && l.arc.to.at_infinity) ||
                  (chordal(l.arc.to, kO) < 1e-12 && l.arc.from.at_infinity);
      CHECK(ends);
    }
  }
  SUBCASE("residual and containment") {
    Gen g(71);
    for (int it = 0; it < 100; ++it) {
      BoundaryPoint p = g.point();
      BentLeaf l = bent_leaf(p, 3 * kPi / 4);
      CHECK(l.residual < 1e-8);
      CHECK(arc_contains(l.arc, p));
    }
  }
  CHECK_THROWS_AS(bent_leaf(BoundaryPoint::finite(1.0, 0.0), 0.3), GeometryError);
  CHECK_THROWS_AS(bent_leaf(BoundaryPoint::finite(2.0, 0.0), kPi), GeometryError);
}

TEST_CASE("horizontal spirals") {
  CurveSample s = spiral_curve(0.3, -4, 4, 100);
  CHECK(s.points.size() == 102);
  GroupElement l = diagonal_loxodromic({1.0, 0.3}, 1.0);
  for (const auto& p : s.points) {
    if (p.at_infinity) continue;
    CHECK(std::abs(p.t - 0.9 * std::norm(p.z)) < 1e-10 * (1 + std::norm(p.z)));
  }
  for (double u : {-3.0, -0.5, 0.0, 1.7}) {
    BoundaryPoint im = apply(l, spiral_point(0.3, u));
    BoundaryPoint ex = spiral_point(0.3, u + 1.0);
    CHECK(chordal(im, ex) < 1e-9);
  }
  BoundaryPoint near_zero = spiral_point(1e-9, 1.0);
  CHECK(std::abs(near_zero.t) < 1e-7);
}

TEST_CASE("mobius band sample") {
  MobiusSample r = mobius_sample(rcircle_sample(30));
  for (const auto& v : r.images) {
    // projectively real: v and its conjugate are proportional
    CHECK(v.v.cross(v.v.conjugate()).norm() < 1e-9 * v.v.squaredNorm());
  }
  CHECK(r.injectivity_margin > 0);

  MobiusSample b = mobius_sample(bent_curve(3 * kPi / 4, 40));
  CHECK(b.injectivity_margin > 0);

  CurveSample chain;
  chain.points = {BoundaryPoint::finite(0.0, -1.0), kO, BoundaryPoint::finite(0.0, 1.0), BoundaryPoint::finite(1.0, 0.0)};
  CHECK_THROWS_AS(mobius_sample(chain), GeometryError);
}

TEST_CASE("flow point") {
  BoundaryPoint x = BoundaryPoint::finite(1.0, 0.0), y = BoundaryPoint::finite(-1.0, 0.0);
  BoundaryPoint p = flow_point(x, y, BoundaryPoint::finite(0.0, 1.0));
  CHECK(std::abs(p.z.real()) < 1e-8);
  CHECK(std::abs(std::abs(p.z) - 1.0) < 1e-8);
  CHECK(arc_contains(Arc{x, y}, p));

  Gen g(73);
  for (int it = 0; it < 100; ++it) {
    BoundaryPoint a = g.point(), b = g.point(), z = g.point();
    BoundaryPoint q = flow_point(a, b, z);
    CHECK(arc_contains(Arc{a, b}, q));
    CHECK(std::abs(geodesic_foot(a, b, q) - geodesic_foot(a, b, z)) < 1e-8);
    GroupElement h = g.su21();
    BoundaryPoint hq = flow_point(apply(h, a), apply(h, b), apply(h, z));
    CHECK(chordal(hq, apply(h, q)) < 1e-7);
  }
}

TEST_CASE("foot of the geodesic projection matches a Busemann minimum") {
  Gen g(79);
  for (int it = 0; it < 50; ++it) {
    BoundaryPoint a = g.point(), b = g.point(), z = g.point();
    GroupElement f = normalizing_frame(a, b);
    HVector zl = f * z.lift();
    // Busemann function of z along the geodesic (-e^s, 0, 1), minimised by golden section.
    auto busemann = [&](double s) {
      HVector gs(-std::exp(s), 0.0, 1.0);
      return std::log(std::norm(herm_inner(gs, zl)) / (-herm_norm(gs)));
    };
    double lo = -60, hi = 60;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    for (int k = 0; k < 200; ++k) {
      double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
      if (busemann(m1) < busemann(m2))
        hi = m2;
      else
        lo = m1;
    }
    CHECK(geodesic_foot(a, b, z) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));
  }
}
