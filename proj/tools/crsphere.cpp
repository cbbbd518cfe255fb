#include "crs/crowns.hpp"
#include "crs/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace crs;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitCertification = 4;

struct Globals {
  std::string config;
  std::string out = ".";
  int jobs = 0;
  std::uint64_t seed = 1;
  bool resume = false;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput:
    case ErrorCode::ParamOutOfRange:
      return kExitConfig;
    case ErrorCode::Crossing:
    case ErrorCode::HyperconvexityViolation:
      return kExitCertification;
    default:
      return kExitPrecondition;
  }
}

json load_config(const Globals& g) {
  if (g.config.empty()) return json::object();
  std::ifstream in(g.config);
  if (!in) throw ConfigError("cannot open config " + g.config);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

fs::path out_dir(const Globals& g) {
  fs::path p(g.out);
  fs::create_directories(p);
  return p;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  os << j.dump(2) << '\n';
  if (!os) throw ConfigError("cannot write " + p.string());
}

std::vector<BoundaryPoint> parse_points(const std::vector<std::string>& tok, std::size_t count) {
  std::vector<BoundaryPoint> pts;
  std::size_t i = 0;
  try {
    while (i < tok.size()) {
      if (tok[i] == "inf") {
        pts.push_back(BoundaryPoint::infinity());
        ++i;
        continue;
      }
      if (i + 3 > tok.size()) throw ConfigError("incomplete point");
      std::size_t used = 0;
      double v[3];
      for (int k = 0; k < 3; ++k) {
        v[k] = std::stod(tok[i + k], &used);
        if (used != tok[i + k].size()) throw ConfigError("bad number " + tok[i + k]);
      }
      pts.push_back(BoundaryPoint::finite({v[0], v[1]}, v[2]));
      i += 3;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad coordinate in point list");
  }
  if (pts.size() != count)
    throw ConfigError("expected " + std::to_string(count) + " points as 'z_re z_im t' or 'inf'");
  return pts;
}

TriangleParams rep_params(const json& c) {
  TriangleParams t;
  t.p = c.value("p", 3);
  t.q = c.value("q", 3);
  t.r = c.value("r", 4);
  if (c.contains("target_tau"))
    t.phase = phase_for_tau(t.p, t.q, t.r, c["target_tau"].get<double>());
  else
    t.phase = c.value("phase", std::numbers::pi);
  return t;
}

int cmd_cartan(const std::vector<std::string>& tok) {
  auto p = parse_points(tok, 3);
  CartanValue a = cartan(p[0], p[1], p[2]);
  // below print precision; also avoids "-0.000000000"
  double angle = std::abs(a.angle) < 5e-10 ? 0.0 : a.angle;
  std::printf("A = %.9f\n|A| = %.9f\n", angle, std::abs(angle));
  if (a.degenerate) std::printf("note: degenerate triple (coincident points)\n");
  return 0;
}

int cmd_sweep(const Globals& g) {
  json c = load_config(g);
  SweepConfig cfg;
  cfg.p = c.value("p", 3);
  cfg.q = c.value("q", 3);
  cfg.r = c.value("r", 4);
  cfg.word_length = c.value("word_length", 10);
  cfg.n_points = c.value("n_points", 200);
  cfg.dedup_eps = c.value("dedup_eps", 1e-3);
  cfg.refine = c.value("refine", false);
  if (c.contains("phases")) {
    cfg.phases = c["phases"].get<std::vector<double>>();
  } else {
    int count = c.value("count", 16);
    if (count < 2) throw ConfigError("phase count must be at least 2");
    cfg.phases = phases_toward_tau(cfg.p, cfg.q, cfg.r, c.value("tau_end", 3.2), count);
  }
  if (cfg.phases.empty()) throw ConfigError("empty phase range");
  if (cfg.n_points < 3 || cfg.word_length < 1) throw ConfigError("n_points >= 3 and word_length >= 1 required");

  fs::path dir = out_dir(g);
  fs::path csv = dir / "sweep.csv";
  std::vector<SweepRow> previous;
  if (g.resume && fs::exists(csv)) {
    std::ifstream in(csv);
    previous = read_sweep_csv(in);
  }
  std::set<double> done;
  for (const auto& r : previous)
    if (r.ok) done.insert(r.phase);
  std::erase_if(previous, [](const SweepRow& r) { return !r.ok; });

  auto rows = sweep(cfg, [&](double ph) { return done.count(ph) > 0; },
                    [](const SweepRow& r) {
                      std::fprintf(stderr, "phase %.6f tau %.6f sup %.6f %s\n", r.phase, r.tau.real(),
                                   r.sup_estimate, r.ok ? "" : r.error.c_str());
                    });
  rows.insert(rows.end(), previous.begin(), previous.end());
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.tau.real() < b.tau.real(); });

  json meta = metadata(c, g.seed);
  std::ofstream os(csv);
  write_sweep_csv(os, rows, meta);
  write_json(dir / "sweep.json", sweep_json(rows, cfg, meta));

  std::vector<double> x, y;
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failed;
      continue;
    }
    x.push_back(-r.tau.real());
    y.push_back(r.sup_estimate);
  }
  std::printf("rows %zu (failed %zu) -> %s\n", rows.size(), failed, csv.string().c_str());
  if (x.size() >= 2) {
    double rho = spearman(x, y);
    std::printf("trend: spearman(-tau, sup) = %.4f %s\n", rho, rho > 0.95 ? "monotone" : "NOT monotone");
  }
  return 0;
}

// Two arcs that cross: the spiral axis and a certified crossing chain arc.
std::vector<CrownArc> forced_crossing_arcs() {
  CrossingScan scan;
  scan.grid = 400;
  auto rep = crossing_detector({[](double s) { return spiral_point(0.3, s); }},
                               diagonal_loxodromic({1.0, 0.3}, 1.0), scan);
  if (rep.pairs.empty()) throw GeometryError(ErrorCode::NoConvergence, "fixture produced no crossing");
  auto clearance = [&](const CrossingPair& c) {
    return std::min(chordal(c.point, rep.axis.from), chordal(c.point, rep.axis.to));
  };
  auto best = std::max_element(rep.pairs.begin(), rep.pairs.end(),
                               [&](const CrossingPair& a, const CrossingPair& b) { return clearance(a) < clearance(b); });
  return {{Word{}, rep.axis}, {Word{0}, best->arc}};
}

int cmd_crown(const Globals& g) {
  json c = load_config(g);
  json meta = metadata(c, g.seed);
  double k_radius = c.value("k_radius", std::numeric_limits<double>::infinity());
  if (c.value("fixture", std::string()) == "forced_crossing") {
    auto arcs = forced_crossing_arcs();
    auto rep = embeddedness(arcs, k_radius);
    std::printf("status %s\n", to_string(rep.status));
    if (rep.status == EmbeddednessReport::Crossing) {
      std::printf("witness arcs %zu x %zu at %s\n", rep.witness->first, rep.witness->second,
                  rep.witness_point ? rep.witness_point->str().c_str() : "?");
      return kExitCertification;
    }
    return 0;
  }
  TriangleParams t = rep_params(c);
  Representation r = triangle_group(t);
  Word gamma = parse_word(c.value("gamma", std::string("3212")));
  CrownOptions opt;
  opt.limit_length = c.value("limit_length", 10);
  opt.limit_eps = c.value("limit_eps", 1e-3);
  Crown crown = build_crown(r, gamma, c.value("word_length", 6), opt);
  auto rep = embeddedness(crown, k_radius);
  std::printf("tau %.9f%+.9fi  arcs %zu  pairs %zu  status %s", r.tau.real(), r.tau.imag(), rep.arcs_tested,
              rep.pairs_tested, to_string(rep.status));
  if (rep.status == EmbeddednessReport::Crossing) {
    std::printf("\nwitness %s x %s at %s\n", word_label(crown.arcs[rep.witness->first].coset).c_str(),
                word_label(crown.arcs[rep.witness->second].coset).c_str(),
                rep.witness_point ? rep.witness_point->str().c_str() : "?");
    return kExitCertification;
  }
  std::printf("  margin %.6g\n", rep.min_margin);
  fs::path p = out_dir(g) / "crown.json";
  write_json(p, export_uniformization(crown, rep, meta));
  std::printf("wrote %s\n", p.string().c_str());
  return 0;
}

int cmd_foliation(const Globals& g, const std::string& mode, const std::vector<std::string>& tok) {
  Arc leaf;
  double residual = 0.0;
  std::vector<std::string> rest = tok;
  json extra = json::object();
  if (mode == "rcircle") {
    auto p = parse_points(rest, 1)[0];
    leaf = foliation_leaf_rcircle(p);
    residual = std::abs(det3(p.unit_lift(), leaf.from.unit_lift(), leaf.to.unit_lift()));
  } else if (mode == "bent") {
    if (rest.empty()) throw ConfigError("bent mode needs theta");
    double theta;
    try {
      theta = std::stod(rest[0]);
    } catch (const std::logic_error&) {
      throw ConfigError("bad theta " + rest[0]);
    }
    rest.erase(rest.begin());
    auto p = parse_points(rest, 1)[0];
    BentLeaf b = bent_leaf(p, theta);
    leaf = b.arc;
    residual = b.residual;
    extra["theta"] = theta;
  } else {
    throw ConfigError("mode must be rcircle or bent");
  }
  std::printf("from %s\nto   %s\nresidual %.3g\n", leaf.from.str().c_str(), leaf.to.str().c_str(), residual);
  if (g.out != ".") {
    json c = {{"mode", mode}, {"args", tok}};
    json j = {{"meta", metadata(c, g.seed)},
              {"endpoints", {to_json(leaf.from), to_json(leaf.to)}},
              {"residual", residual},
              {"polyline", to_json(arc_polyline(leaf))}};
    j.update(extra);
    write_json(out_dir(g) / "foliation.json", j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the CR sphere: Cartan invariants, slimness sweeps, crowns, foliations"};
  app.set_version_flag("--version", std::string(CRS_VERSION));
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON configuration file");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed recorded in output metadata");
  app.add_flag("--resume", g.resume, "Skip phases already present in the output");

  std::vector<std::string> cartan_args;
  auto* c_cartan = app.add_subcommand("cartan", "Cartan invariant of three points ('z_re z_im t' or 'inf')");
  c_cartan->add_option("points", cartan_args)->required()->allow_extra_args();
  c_cartan->fallthrough();

  auto* c_sweep = app.add_subcommand("sweep", "Deformation sweep of the limit-set Cartan supremum");
  c_sweep->fallthrough();
  auto* c_crown = app.add_subcommand("crown", "Build, certify and export a crown");
  c_crown->fallthrough();

  std::string fol_mode;
  std::vector<std::string> fol_args;
  auto* c_fol = app.add_subcommand("foliation", "Leaf through a point: 'rcircle P' or 'bent THETA P'");
  c_fol->add_option("mode", fol_mode)->required();
  c_fol->add_option("args", fol_args)->required();
  c_fol->fallthrough();

  // Negative coordinates must not be read as flags.
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
#ifdef _OPENMP
  if (g.jobs > 0) omp_set_num_threads(g.jobs);
#endif
  try {
    if (*c_cartan) return cmd_cartan(cartan_args);
    if (*c_sweep) return cmd_sweep(g);
    if (*c_crown) return cmd_crown(g);
    if (*c_fol) return cmd_foliation(g, fol_mode, fol_args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code(e.code());
  }
  return 0;
}
