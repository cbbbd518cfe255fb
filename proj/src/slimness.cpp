#include "crs/slimness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace crs {

namespace {

struct Best {
  double value = -1.0;
  int i = -1, j = -1, k = -1;

  // Larger value wins; ties go to the lexicographically smaller triple so that
  // every schedule picks the same argmax.
  void offer(double v, int a, int b, int c) {
    if (v > value || (v == value && std::tie(a, b, c) < std::tie(i, j, k))) {
      value = v;
      i = a;
      j = b;
      k = c;
    }
  }
  void merge(const Best& o) {
    if (o.i >= 0) offer(o.value, o.i, o.j, o.k);
  }
};

std::vector<HVector> unit_lifts(const std::vector<BoundaryPoint>& pts) {
  std::vector<HVector> u;
  u.reserve(pts.size());
  for (const auto& p : pts) u.push_back(p.unit_lift());
  return u;
}

// Row-major table of <u_i, u_j>.
std::vector<cplx> pair_table(const std::vector<HVector>& u) {
  const std::size_t n = u.size();
  std::vector<cplx> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = herm_inner(u[i], u[j]);
  return t;
}

inline double abs_cartan(cplx pq, cplx qr, cplx rp) {
  if (std::abs(pq) < kCoincide || std::abs(qr) < kCoincide || std::abs(rp) < kCoincide) return 0.0;
  return std::abs(std::arg(-(pq * qr * rp)));
}

template <class F>
Best scan_triples(int n, Exec exec, F&& value) {
  Best best;
  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) best.offer(value(i, j, k), i, j, k);
    return best;
  }
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(dynamic, 4) nowait
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) local.offer(value(i, j, k), i, j, k);
#pragma omp critical
    best.merge(local);
  }
  return best;
}

void check_size(std::size_t n) {
  if (n < 3) throw GeometryError(ErrorCode::BadInput, "need at least 3 points, got " + std::to_string(n));
  if (n > kMaxScanPoints)
    throw GeometryError(ErrorCode::ParamOutOfRange, "exhaustive scan is capped at " +
                                                        std::to_string(kMaxScanPoints) + " points, got " +
                                                        std::to_string(n));
}

// Straight segment in Heisenberg coordinates; s in [0,1].
BoundaryPoint lerp(const BoundaryPoint& a, const BoundaryPoint& b, double s) {
  return BoundaryPoint::finite(a.z + s * (b.z - a.z), a.t + s * (b.t - a.t));
}

double triple_value(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c) {
  return std::abs(cartan(a, b, c).angle);
}

// Golden-section maximum of f on [0,1]; returns (s, f(s)).
template <class F>
std::pair<double, double> golden_max(F&& f) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double lo = 0, hi = 1;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Coordinate ascent: each triple point slides along the segments to its sample neighbours.
void refine(const std::vector<BoundaryPoint>& pts, bool closed, SlimnessReport& rep) {
  const int n = static_cast<int>(pts.size());
  std::array<BoundaryPoint, 3> cur = rep.argmax_triple;
  double best = rep.sup_estimate;
  for (int round = 0; round < 20; ++round) {
    double start = best;
    for (int slot = 0; slot < 3; ++slot) {
      int idx = rep.argmax_index[slot];
      for (int dir : {-1, 1}) {
        int nb = idx + dir;
        if (closed) nb = (nb + n) % n;
        if (nb < 0 || nb >= n) continue;
        const BoundaryPoint& base = pts[idx];
        const BoundaryPoint& other = pts[nb];
        if (base.at_infinity || other.at_infinity) continue;
        auto f = [&](double s) {
          auto t = cur;
          t[slot] = lerp(base, other, s);
          return triple_value(t[0], t[1], t[2]);
        };
        auto [s, v] = golden_max(f);
        if (v > best) {
          best = v;
          cur[slot] = lerp(base, other, s);
        }
      }
    }
    if (best - start < 1e-13) break;
  }
  rep.sup_estimate = best;
  rep.argmax_triple = cur;
  rep.refined = true;
}

}  // namespace

SlimnessReport sup_cartan(const std::vector<BoundaryPoint>& pts, bool refine_flag, bool closed, Exec exec) {
  check_size(pts.size());
  const int n = static_cast<int>(pts.size());
  auto u = unit_lifts(pts);
  auto t = pair_table(u);
  Best b = scan_triples(n, exec, [&](int i, int j, int k) {
    return abs_cartan(t[i * n + j], t[j * n + k], t[k * n + i]);
  });
  SlimnessReport rep;
  rep.n_points = pts.size();
  rep.n_triples_evaluated = static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) / 6;
  rep.sup_estimate = std::min(b.value, std::numbers::pi / 2);
  rep.argmax_index = {b.i, b.j, b.k};
  rep.argmax_triple = {pts[b.i], pts[b.j], pts[b.k]};
  if (refine_flag) refine(pts, closed, rep);
  return rep;
}

SlimnessReport sup_cartan(const CurveSample& e, bool refine_flag, Exec exec) {
  return sup_cartan(e.points, refine_flag, e.closed, exec);
}

SlimnessReport sup_cartan(const LimitSetSample& e, bool refine_flag, Exec exec) {
  return sup_cartan(e.points, refine_flag, true, exec);
}

HyperconvexityReport hyperconvexity(const std::vector<BoundaryPoint>& pts, Exec exec) {
  if (pts.size() < 3) throw GeometryError(ErrorCode::BadInput, "hyperconvexity needs at least 3 points");
  const int n = static_cast<int>(pts.size());
  auto u = unit_lifts(pts);
  // Maximize the negated determinant so the shared tie-break applies.
  Best b = scan_triples(n, exec, [&](int i, int j, int k) { return -std::abs(det3(u[i], u[j], u[k])); });
  HyperconvexityReport rep;
  rep.min_collinearity = -b.value;
  rep.witness_index = {b.i, b.j, b.k};
  rep.witness = {pts[b.i], pts[b.j], pts[b.k]};
  return rep;
}

ParabolicKind parse_parabolic_kind(const std::string& s) {
  if (s == "vertical") return ParabolicKind::Vertical;
  if (s == "screw") return ParabolicKind::Screw;
  if (s == "horizontal") return ParabolicKind::Horizontal;
  throw GeometryError(ErrorCode::BadInput, "unknown parabolic kind: " + s);
}

SlimnessReport parabolic_obstruction_demo(ParabolicKind kind, int iterates) {
  GroupElement g;
  BoundaryPoint p;
  switch (kind) {
    case ParabolicKind::Vertical:
      g = heisenberg_translation(0.0, 1.0);
      p = BoundaryPoint::finite({0.5, 0.2}, 0.1);
      break;
    case ParabolicKind::Screw: {
      Mat3 rot = Mat3::Identity();
      rot(1, 1) = std::polar(1.0, 1.0);
      g = GroupElement(rot) * heisenberg_translation(0.0, 1.0);
      p = BoundaryPoint::finite(1.0, 0.0);
      break;
    }
    case ParabolicKind::Horizontal:
      g = heisenberg_translation(1.0, 0.0);
      p = BoundaryPoint::finite(0.3, 0.2);
      break;
  }
  std::vector<BoundaryPoint> orbit{p};
  GroupElement gn = g;
  for (int k = 1; k < iterates; ++k, gn = gn * g) orbit.push_back(apply(gn, p));
  orbit.push_back(BoundaryPoint::infinity());
  return sup_cartan(orbit, false, false);
}

}  // namespace crs
