#include "crs/crowns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crs {

namespace {

BoundaryPoint to_boundary(const HVector& v) {
  HVector s = v.model == Model::Siegel ? v : cayley(v.model, Model::Siegel, v);
  return heis_from_lift(s.unit(), 1e-8);
}

double normalized_f(const HVector& a, const HVector& b, const HVector& m) {
  HVector n = box(box(a, b), m);
  double nn = n.v.squaredNorm();
  return nn > 0 ? herm_norm(n) / nn : 0.0;
}

}  // namespace

Arc axis_at_infinity(const GroupElement& g) {
  Classification c = classify(g);
  if (c.cls != ElementClass::Loxodromic)
    throw GeometryError(ErrorCode::NotLoxodromic, std::string("axis_at_infinity of a ") + to_string(c.cls) +
                                                      " element");
  return Arc{to_boundary(c.fixed_points->second), to_boundary(c.fixed_points->first)};
}

Crown build_crown(const Representation& rep, const Word& gamma, int word_length, const CrownOptions& opt) {
  if (word_length < 0) throw GeometryError(ErrorCode::BadInput, "word length must be nonnegative");
  Crown c;
  c.rep = rep;
  c.core_word = gamma;
  c.word_length = word_length;
  GroupElement g = word_element(rep, gamma);
  Arc axis = axis_at_infinity(g);
  std::vector<WordElement> words =
      word_length == 0 ? std::vector<WordElement>{{Word{}, GroupElement()}} : enumerate_words(rep, word_length);
  for (const auto& w : words) {
    Arc a{apply(w.g, axis.from), apply(w.g, axis.to)};
    bool dup = std::any_of(c.arcs.begin(), c.arcs.end(), [&](const CrownArc& x) {
      return chordal(x.arc.from, a.from) < opt.coset_eps && chordal(x.arc.to, a.to) < opt.coset_eps;
    });
    if (!dup) c.arcs.push_back({w.word, a});
  }
  c.limit_sample = limit_set(rep, opt.limit_length, opt.limit_eps);
  return c;
}

std::vector<BoundaryPoint> arc_polyline(const Arc& a, int n) {
  HVector la = a.from.lift(), lb = a.to.lift();
  double scale = std::abs(herm_inner(lb, la)) * la.norm() / lb.norm();
  std::vector<BoundaryPoint> out{a.from};
  for (int k = 1; k < n - 1; ++k) {
    double u = static_cast<double>(k) / (n - 1);
    out.push_back(arc_point(a, scale * std::tan(0.5 * std::numbers::pi * u)));
  }
  out.push_back(a.to);
  return out;
}

const char* to_string(EmbeddednessReport::Status s) { return s == EmbeddednessReport::Embedded ? "EMBEDDED" : "CROSSING"; }

EmbeddednessReport embeddedness(const std::vector<CrownArc>& arcs, double k_radius, const BoundaryPoint& center,
                                Exec exec) {
  EmbeddednessReport rep;
  rep.region = k_radius;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (std::isfinite(k_radius)) {
      auto poly = arc_polyline(arcs[i].arc, 16);
      bool near = std::any_of(poly.begin(), poly.end(), [&](const BoundaryPoint& p) { return chordal(p, center) <= k_radius; });
      if (!near) continue;
    }
    idx.push_back(i);
  }
  rep.arcs_tested = idx.size();
  const long n = static_cast<long>(idx.size());
  std::vector<std::pair<long, long>> pairs;
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  rep.pairs_tested = pairs.size();
  const long np = static_cast<long>(pairs.size());
  std::vector<ArcRelation> rel(np);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < np; ++k) rel[k] = arcs_intersect(arcs[idx[pairs[k].first]].arc, arcs[idx[pairs[k].second]].arc);
  } else {
    for (long k = 0; k < np; ++k) rel[k] = arcs_intersect(arcs[idx[pairs[k].first]].arc, arcs[idx[pairs[k].second]].arc);
  }
  // Reduction in index order keeps the witness independent of the schedule.
  for (long k = 0; k < np; ++k) {
    const ArcRelation& r = rel[k];
    bool crossing = r.kind == ArcRelation::Cross ||
                    (r.kind == ArcRelation::SameSupport &&
                     (r.support == ArcRelation::Equal || r.support == ArcRelation::Overlapping));
    if (crossing) {
      if (rep.status == EmbeddednessReport::Embedded) {
        rep.status = EmbeddednessReport::Crossing;
        rep.witness = std::make_pair(idx[pairs[k].first], idx[pairs[k].second]);
        rep.witness_point = r.point;
      }
      continue;
    }
    if (r.kind == ArcRelation::Disjoint)
      rep.min_margin = std::min(rep.min_margin, r.margin);
    else
      ++rep.touching_pairs;
  }
  if (rep.status == EmbeddednessReport::Crossing) rep.min_margin = 0.0;
  return rep;
}

EmbeddednessReport embeddedness(const Crown& c, double k_radius, Exec exec) {
  return embeddedness(c.arcs, k_radius, BoundaryPoint::finite(0.0, 0.0), exec);
}

CrossingReport crossing_detector(const ParametrizedCurve& e, const GroupElement& g, const CrossingScan& scan) {
  if (scan.grid < 2) throw GeometryError(ErrorCode::BadInput, "crossing scan grid must have at least 2 points");
  CrossingReport out;
  out.axis = axis_at_infinity(g);
  HVector m = box(out.axis.from.unit_lift(), out.axis.to.unit_lift());
  const int n = scan.grid;
  auto sa = [&](int i) { return scan.a_min + (scan.a_max - scan.a_min) * i / (n - 1); };
  auto sb = [&](int j) { return scan.b_min + (scan.b_max - scan.b_min) * j / (n - 1); };
  std::vector<HVector> la(n), lb(n);
  for (int i = 0; i < n; ++i) {
    la[i] = e.at(sa(i)).unit_lift();
    lb[i] = e.at(sb(i)).unit_lift();
  }
  std::vector<std::size_t> row_brackets(n, 0);
  std::vector<std::vector<CrossingPair>> row_pairs(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const double s_a = sa(i);
    const BoundaryPoint a = e.at(s_a);
    double prev = normalized_f(la[i], lb[0], m);
    for (int j = 1; j < n; ++j) {
      double cur = normalized_f(la[i], lb[j], m);
      if ((prev < 0) != (cur < 0)) {
        ++row_brackets[i];
        double lo = sb(j - 1), hi = sb(j), flo = prev, fmid = cur, mid = hi;
        for (int it = 0; it < 200; ++it) {
          mid = 0.5 * (lo + hi);
          fmid = normalized_f(la[i], e.at(mid).unit_lift(), m);
          if (std::abs(fmid) < scan.f_tol || hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) break;
          if ((fmid < 0) == (flo < 0)) {
            lo = mid;
            flo = fmid;
          } else {
            hi = mid;
          }
        }
        BoundaryPoint b = e.at(mid);
        for (const Arc& arc : {Arc{a, b}, Arc{b, a}}) {
          ArcRelation r = arcs_intersect(arc, out.axis);
          if (r.kind == ArcRelation::Cross) {
            row_pairs[i].push_back({s_a, mid, arc, *r.point, std::abs(fmid)});
            break;
          }
        }
      }
      prev = cur;
    }
  }
  for (int i = 0; i < n; ++i) {
    out.brackets += row_brackets[i];
    for (auto& p : row_pairs[i]) out.pairs.push_back(std::move(p));
  }
  return out;
}

}  // namespace crs
