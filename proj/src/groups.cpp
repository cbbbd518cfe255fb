#include "crs/groups.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crs {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool Representation::relators_pass() const {
  return std::all_of(relator_report.begin(), relator_report.end(), [](const RelatorCheck& r) { return r.pass; });
}

std::string word_label(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int k : w) s += static_cast<char>('1' + k);
  return s;
}

Word parse_word(const std::string& s) {
  Word w;
  if (s == "e") return w;
  for (char ch : s) {
    if (ch < '1' || ch > '3') throw GeometryError(ErrorCode::BadInput, "word letters must be 1, 2 or 3: " + s);
    w.push_back(ch - '1');
  }
  return w;
}

GroupElement complex_reflection(const HVector& c) {
  double cc = herm_norm(c);
  if (point_type(c).type != PointType::Positive)
    throw GeometryError(ErrorCode::WrongType, "complex_reflection needs a positive vector");
  Vec3 jc = form_matrix(c.model).cast<cplx>() * c.v;
  Mat3 m = -Mat3::Identity() + (2.0 / cc) * c.v * jc.adjoint();
  return GroupElement(m, c.model);
}

Eigen::Matrix3cd gram_matrix(const TriangleParams& t) {
  double a = std::cos(kPi / t.p), b = std::cos(kPi / t.q), c = std::cos(kPi / t.r);
  Eigen::Matrix3cd g = Eigen::Matrix3cd::Identity();
  g(0, 1) = a;
  g(1, 0) = a;
  g(1, 2) = b;
  g(2, 1) = b;
  g(2, 0) = std::polar(c, t.phase);
  g(0, 2) = std::conj(g(2, 0));
  return g;
}

double phase_cos_bound(int p, int q, int r) {
  double a = std::cos(kPi / p), b = std::cos(kPi / q), c = std::cos(kPi / r);
  return (a * a + b * b + c * c - 1.0) / (2 * a * b * c);
}

bool admissible(const TriangleParams& t) {
  if (t.p < 2 || t.q < 2 || t.r < 2) return false;
  if (1.0 / t.p + 1.0 / t.q + 1.0 / t.r >= 1.0) return false;
  return std::cos(t.phase) < phase_cos_bound(t.p, t.q, t.r) - 1e-12;
}

namespace {

RelatorCheck involution_check(const GroupElement& g, const std::string& name) {
  RelatorCheck r;
  r.name = name;
  r.expected_order = 2;
  r.residual = (g.matrix * g.matrix - Mat3::Identity()).norm();
  r.measured_order = 2.0;
  r.pass = r.residual < 1e-8;
  return r;
}

RelatorCheck order_check(const GroupElement& g, int k, const std::string& name) {
  RelatorCheck r;
  r.name = name;
  r.expected_order = k;
  Eigen::ComplexEigenSolver<Mat3> es(g.matrix, false);
  double amax = 0.0;
  for (int i = 0; i < 3; ++i) amax = std::max(amax, std::abs(std::arg(es.eigenvalues()(i))));
  r.measured_order = amax > 0 ? 2 * kPi / amax : std::numeric_limits<double>::infinity();
  Mat3 pw = Mat3::Identity();
  for (int i = 0; i < k; ++i) pw = pw * g.matrix;
  r.residual = (pw - Mat3::Identity()).norm();
  r.pass = r.residual < 1e-8 && std::abs(r.measured_order - k) < 1e-8 * k;
  return r;
}

}  // namespace

Representation triangle_group(const TriangleParams& t) {
  if (!admissible(t))
    throw GeometryError(ErrorCode::ParamOutOfRange, "Gram matrix for (" + std::to_string(t.p) + "," +
                                                        std::to_string(t.q) + "," + std::to_string(t.r) +
                                                        ") at phase " + std::to_string(t.phase) +
                                                        " does not have signature (2,1)");
  Eigen::Matrix3cd g = gram_matrix(t);
  // G = L D L^H with unit lower-triangular L.
  Eigen::Matrix3cd l = Eigen::Matrix3cd::Identity();
  Eigen::Vector3d d;
  for (int j = 0; j < 3; ++j) {
    cplx s = g(j, j);
    for (int k = 0; k < j; ++k) s -= std::norm(l(j, k)) * d(k);
    d(j) = s.real();
    for (int i = j + 1; i < 3; ++i) {
      cplx v = g(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k)) * d(k);
      l(i, j) = v / d(j);
    }
  }
  if (!(d(0) > 0 && d(1) > 0 && d(2) < 0))
    throw GeometryError(ErrorCode::ParamOutOfRange, "Gram factorization has the wrong inertia");
  Eigen::Matrix3cd v = d.cwiseAbs().cwiseSqrt().cast<cplx>().asDiagonal() * l.adjoint();
  Representation rep;
  rep.params = t;
  for (int k = 0; k < 3; ++k) {
    HVector cb(v.col(k), Model::Ball);
    rep.generators.push_back(complex_reflection(cayley(Model::Ball, Model::Siegel, cb)));
  }
  const auto& gen = rep.generators;
  rep.relator_report.push_back(involution_check(gen[0], "i1^2"));
  rep.relator_report.push_back(involution_check(gen[1], "i2^2"));
  rep.relator_report.push_back(involution_check(gen[2], "i3^2"));
  rep.relator_report.push_back(order_check(gen[0] * gen[1], t.p, "(i1 i2)^p"));
  rep.relator_report.push_back(order_check(gen[1] * gen[2], t.q, "(i2 i3)^q"));
  rep.relator_report.push_back(order_check(gen[2] * gen[0], t.r, "(i3 i1)^r"));
  rep.tau = word_element(rep, kTauWord).matrix.trace();
  return rep;
}

double phase_for_tau(int p, int q, int r, double target_tau) {
  double bound = phase_cos_bound(p, q, r);
  double lo = bound >= 1.0 ? 0.0 : std::acos(std::max(-1.0, bound)) + 1e-12;
  double hi = kPi;
  auto tau = [&](double phi) { return triangle_group({p, q, r, phi}).tau.real(); };
  double tlo = tau(lo), thi = tau(hi);
  if (target_tau < std::min(tlo, thi) || target_tau > std::max(tlo, thi))
    throw GeometryError(ErrorCode::ParamOutOfRange, "target tau " + std::to_string(target_tau) + " outside [" +
                                                        std::to_string(std::min(tlo, thi)) + ", " +
                                                        std::to_string(std::max(tlo, thi)) + "]");
  bool increasing = thi > tlo;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((tau(mid) < target_tau) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

GroupElement word_element(const Representation& rep, const Word& w) {
  GroupElement g;
  for (int k : w) g = g * rep.generators.at(k);
  return g;
}

std::vector<WordElement> enumerate_words(const Representation& rep, int max_length) {
  std::vector<WordElement> out;
  out.push_back({Word{}, GroupElement()});
  std::multimap<double, std::size_t> index;
  index.emplace(out[0].g.matrix.norm(), 0);
  std::vector<std::size_t> frontier{0};
  const int ngen = static_cast<int>(rep.generators.size());
  for (int len = 1; len <= max_length; ++len) {
    std::vector<WordElement> cand;
    for (std::size_t f : frontier)
      for (int k = 0; k < ngen; ++k) {
        const Word& w = out[f].word;
        if (!w.empty() && w.back() == k) continue;
        Word nw = w;
        nw.push_back(k);
        cand.push_back({std::move(nw), GroupElement()});
      }
    long nc = static_cast<long>(cand.size());
    std::vector<std::size_t> parent;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nc; ++i) {
      const Word& w = cand[i].word;
      GroupElement g = rep.generators[w[0]];
      for (std::size_t j = 1; j < w.size(); ++j) g = g * rep.generators[w[j]];
      cand[i].g = g;
    }
    std::vector<std::size_t> next;
    for (auto& c : cand) {
      double key = c.g.matrix.norm();
      double win = 1.01 * tol::dedup * std::max(1.0, key);
      bool dup = false;
      for (auto it = index.lower_bound(key - win); it != index.end() && it->first <= key + win; ++it)
        if (projective_distance(c.g, out[it->second].g) < tol::dedup) {
          dup = true;
          break;
        }
      if (dup) continue;
      index.emplace(key, out.size());
      next.push_back(out.size());
      out.push_back(std::move(c));
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

void angular_sort(std::vector<BoundaryPoint>& pts) {
  if (pts.size() < 3) return;
  std::vector<Eigen::Vector4d> x;
  for (const auto& p : pts) x.push_back(ball_coordinates(p));
  Eigen::Vector4d c = Eigen::Vector4d::Zero();
  for (const auto& v : x) c += v;
  c /= static_cast<double>(x.size());
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  for (const auto& v : x) cov += (v - c) * (v - c).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov);
  Eigen::Vector4d u1 = es.eigenvectors().col(3), u2 = es.eigenvectors().col(2);
  std::vector<std::pair<double, std::size_t>> key;
  for (std::size_t i = 0; i < x.size(); ++i) key.emplace_back(std::atan2((x[i] - c).dot(u2), (x[i] - c).dot(u1)), i);
  std::sort(key.begin(), key.end());
  std::vector<BoundaryPoint> sorted;
  for (auto& [a, i] : key) sorted.push_back(pts[i]);
  pts = std::move(sorted);
}

}  // namespace

LimitSetSample limit_set(const Representation& rep, int max_length, double eps) {
  auto words = enumerate_words(rep, max_length);
  long n = static_cast<long>(words.size());
  std::vector<std::optional<BoundaryPoint>> fixed(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 1; i < n; ++i) {
    try {
      Classification c = classify(words[i].g);
      if (c.cls == ElementClass::Loxodromic) fixed[i] = heis_from_lift(c.fixed_points->first.unit(), 1e-8);
    } catch (const GeometryError&) {
    }
  }
  LimitSetSample s;
  s.word_length = max_length;
  s.dedup_eps = eps;
  std::vector<Eigen::Vector4d> kept;
  for (long i = 1; i < n; ++i) {
    if (!fixed[i]) continue;
    Eigen::Vector4d x = ball_coordinates(*fixed[i]);
    bool dup = std::any_of(kept.begin(), kept.end(), [&](const Eigen::Vector4d& y) { return (x - y).norm() < eps; });
    if (dup) continue;
    kept.push_back(x);
    s.points.push_back(*fixed[i]);
  }
  if (s.points.empty()) throw GeometryError(ErrorCode::NoLoxodromic, "no loxodromic word up to length " +
                                                                         std::to_string(max_length));
  angular_sort(s.points);
  return s;
}

LimitSetSample subsample(const LimitSetSample& s, std::size_t n) {
  if (s.points.size() <= n) return s;
  std::vector<Eigen::Vector4d> x;
  for (const auto& p : s.points) x.push_back(ball_coordinates(p));
  std::vector<double> dist(x.size(), std::numeric_limits<double>::infinity());
  std::vector<std::size_t> chosen{0};
  while (chosen.size() < n) {
    const Eigen::Vector4d& last = x[chosen.back()];
    std::size_t best = 0;
    double bd = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dist[i] = std::min(dist[i], (x[i] - last).norm());
      if (dist[i] > bd) {
        bd = dist[i];
        best = i;
      }
    }
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end());
  LimitSetSample out;
  out.word_length = s.word_length;
  out.dedup_eps = s.dedup_eps;
  for (std::size_t i : chosen) out.points.push_back(s.points[i]);
  return out;
}

GroupElement heisenberg_translation(cplx w, double s) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = -2.0 * std::conj(w);
  m(0, 2) = cplx(-std::norm(w), s);
  m(1, 2) = w;
  return GroupElement(m);
}

GroupElement diagonal_loxodromic(cplx alpha, double s) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = std::exp(s * alpha);
  m(1, 1) = std::exp(s * (std::conj(alpha) - alpha));
  m(2, 2) = std::exp(-s * std::conj(alpha));
  return GroupElement(m);
}

}  // namespace crs
