#include "crs/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace crs {

json to_json(const BoundaryPoint& p) {
  if (p.at_infinity) return "inf";
  return {{"z", {p.z.real(), p.z.imag()}}, {"t", p.t}};
}

BoundaryPoint point_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return BoundaryPoint::infinity();
    throw GeometryError(ErrorCode::BadInput, "bad point: " + j.dump());
  }
  if (!j.is_object() || !j.contains("z") || !j.contains("t") || j["z"].size() != 2)
    throw GeometryError(ErrorCode::BadInput, "bad point: " + j.dump());
  return BoundaryPoint::finite({j["z"][0].get<double>(), j["z"][1].get<double>()}, j["t"].get<double>());
}

json to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat3 matrix_from_json(const json& j) {
  if (j.size() != 3) throw GeometryError(ErrorCode::BadInput, "matrix needs 3 rows");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    if (j[i].size() != 3) throw GeometryError(ErrorCode::BadInput, "matrix row needs 3 entries");
    for (int k = 0; k < 3; ++k) m(i, k) = cplx(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  }
  return m;
}

json to_json(const std::vector<BoundaryPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<BoundaryPoint> points_from_json(const json& j) {
  std::vector<BoundaryPoint> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

json to_json(const CurveSample& c) {
  return {{"source", c.source}, {"closed", c.closed}, {"points", to_json(c.points)}};
}

CurveSample curve_from_json(const json& j) {
  try {
    CurveSample c;
    c.source = j.value("source", std::string());
    c.closed = j.value("closed", false);
    c.points = points_from_json(j.at("points"));
    return c;
  } catch (const json::exception& e) {
    throw GeometryError(ErrorCode::BadInput, std::string("malformed curve sample: ") + e.what());
  }
}

std::string config_hash(const json& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json metadata(const json& config, std::uint64_t seed) {
  return {{"version", CRS_VERSION},
          {"seed", seed},
          {"config_hash", config_hash(config)},
          {"tolerances",
           {{"null_rel", tol::null_rel},
            {"form", tol::form},
            {"det", tol::det},
            {"lox", tol::lox},
            {"lox_confident", tol::lox_confident},
            {"trace", tol::trace},
            {"dedup", tol::dedup},
            {"coincide", kCoincide}}}};
}

CrownBundle make_bundle(const Crown& c, const EmbeddednessReport& r, const json& meta) {
  if (r.status == EmbeddednessReport::Crossing) {
    std::string w = r.witness ? word_label(c.arcs.at(r.witness->first).coset) + " x " +
                                    word_label(c.arcs.at(r.witness->second).coset)
                              : "?";
    throw GeometryError(ErrorCode::Crossing, "crown arcs cross: " + w);
  }
  CrownBundle b;
  for (const auto& g : c.rep.generators) b.generators.push_back(g.matrix);
  for (int k : c.core_word) b.gamma_word.push_back(k + 1);
  b.limit_set = c.limit_sample.points;
  for (const auto& a : c.arcs) b.arcs.push_back({word_label(a.coset), a.arc, arc_polyline(a.arc)});
  b.report = {{"status", to_string(r.status)},
              {"min_margin", r.min_margin},
              {"arcs_tested", r.arcs_tested},
              {"pairs_tested", r.pairs_tested},
              {"touching_pairs", r.touching_pairs},
              {"word_length", c.word_length},
              {"phase", c.rep.params.phase},
              {"tau", {c.rep.tau.real(), c.rep.tau.imag()}}};
  if (std::isfinite(r.region)) b.report["region"] = r.region;
  b.meta = meta;
  return b;
}

json to_json(const CrownBundle& b) {
  json j;
  j["generators"] = json::array();
  for (const auto& g : b.generators) j["generators"].push_back(to_json(g));
  j["gamma_word"] = b.gamma_word;
  j["limit_set"] = to_json(b.limit_set);
  j["arcs"] = json::array();
  for (const auto& a : b.arcs)
    j["arcs"].push_back({{"coset", a.coset},
                         {"endpoints", {to_json(a.arc.from), to_json(a.arc.to)}},
                         {"polyline", to_json(a.polyline)}});
  j["report"] = b.report;
  j["meta"] = b.meta;
  return j;
}

CrownBundle read_bundle(const json& j) {
  try {
    CrownBundle b;
    for (const auto& g : j.at("generators")) b.generators.push_back(matrix_from_json(g));
    b.gamma_word = j.at("gamma_word").get<std::vector<int>>();
    b.limit_set = points_from_json(j.at("limit_set"));
    for (const auto& a : j.at("arcs"))
      b.arcs.push_back({a.at("coset").get<std::string>(),
                        Arc{point_from_json(a.at("endpoints")[0]), point_from_json(a.at("endpoints")[1])},
                        points_from_json(a.at("polyline"))});
    b.report = j.at("report");
    b.meta = j.value("meta", json::object());
    return b;
  } catch (const json::exception& e) {
    throw GeometryError(ErrorCode::BadInput, std::string("malformed crown bundle: ") + e.what());
  }
}

json export_uniformization(const Crown& c, const EmbeddednessReport& r, const json& meta) {
  return to_json(make_bundle(c, r, meta));
}

std::string point_token(const BoundaryPoint& p) {
  if (p.at_infinity) return "inf";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g;%.17g;%.17g", p.z.real(), p.z.imag(), p.t);
  return buf;
}

BoundaryPoint point_from_token(const std::string& s) {
  if (s == "inf") return BoundaryPoint::infinity();
  double a, b, t;
  if (std::sscanf(s.c_str(), "%lf;%lf;%lf", &a, &b, &t) != 3)
    throw GeometryError(ErrorCode::BadInput, "bad point token: " + s);
  return BoundaryPoint::finite({a, b}, t);
}

namespace {
const char* kHeader = "phase,tau_re,tau_im,n_points,sup_estimate,argmax_a,argmax_b,argmax_c,ok,runtime_s,error";

std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return s;
}
}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const json& meta) {
  for (auto it = meta.begin(); it != meta.end(); ++it) os << "# " << it.key() << " = " << it.value().dump() << '\n';
  os << kHeader << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu,%.17g,", r.phase, r.tau.real(), r.tau.imag(), r.n_points,
                  r.sup_estimate);
    os << buf << point_token(r.argmax[0]) << ',' << point_token(r.argmax[1]) << ',' << point_token(r.argmax[2])
       << ',' << (r.ok ? 1 : 0) << ',';
    std::snprintf(buf, sizeof buf, "%.6g", r.runtime_s);
    os << buf << ',' << clean(r.error) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kHeader) throw GeometryError(ErrorCode::BadInput, "unexpected sweep CSV header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 10) f.emplace_back();
    if (f.size() != 11) throw GeometryError(ErrorCode::BadInput, "sweep CSV row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    r.phase = std::stod(f[0]);
    r.tau = {std::stod(f[1]), std::stod(f[2])};
    r.n_points = std::stoul(f[3]);
    r.sup_estimate = std::stod(f[4]);
    for (int k = 0; k < 3; ++k) r.argmax[k] = point_from_token(f[5 + k]);
    r.ok = f[8] == "1";
    r.runtime_s = std::stod(f[9]);
    r.error = f[10];
    rows.push_back(r);
  }
  return rows;
}

json sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& cfg, const json& meta) {
  json j;
  j["meta"] = meta;
  j["protocol"] = {{"p", cfg.p},
                   {"q", cfg.q},
                   {"r", cfg.r},
                   {"word_length", cfg.word_length},
                   {"n_points", cfg.n_points},
                   {"dedup_eps", cfg.dedup_eps},
                   {"refine", cfg.refine}};
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row = {{"phase", r.phase},
                {"tau", {r.tau.real(), r.tau.imag()}},
                {"n_points", r.n_points},
                {"sup_estimate", r.sup_estimate},
                {"argmax", {to_json(r.argmax[0]), to_json(r.argmax[1]), to_json(r.argmax[2])}},
                {"ok", r.ok},
                {"runtime_s", r.runtime_s}};
    if (!r.ok) row["error"] = r.error;
    j["rows"].push_back(row);
  }
  return j;
}

}  // namespace crs
