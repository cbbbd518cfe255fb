#include "support.hpp"

#include "crs/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace crs;
using namespace testsupport;

TEST_CASE("points and matrices round-trip through json") {
  Gen g(139);
  for (int it = 0; it < 100; ++it) {
    BoundaryPoint p = g.point();
    BoundaryPoint q = point_from_json(json::parse(to_json(p).dump()));
    CHECK(q.z == p.z);
    CHECK(q.t == p.t);
    BoundaryPoint r = point_from_token(point_token(p));
    CHECK(r.z == p.z);
    CHECK(r.t == p.t);
  }
  CHECK(point_from_json("inf").at_infinity);
  CHECK(point_token(BoundaryPoint::infinity()) == "inf");
  CHECK_THROWS_AS(point_from_json(json{{"z", {1.0}}, {"t", 0.0}}), GeometryError);
  CHECK_THROWS_AS(point_from_json("infinity"), GeometryError);

  GroupElement h = g.su21();
  CHECK(matrix_from_json(json::parse(to_json(h.matrix).dump())) == h.matrix);

  CurveSample c = bent_curve(2.0, 20);
  CurveSample d = curve_from_json(to_json(c));
  CHECK(d.closed);
  CHECK(d.source == c.source);
  REQUIRE(d.points.size() == c.points.size());
  CHECK(d.points[11].at_infinity == c.points[11].at_infinity);
  CHECK_THROWS_AS(curve_from_json(json{{"closed", true}}), GeometryError);
}

TEST_CASE("config hash") {
  json a = {{"p", 3}, {"q", 3}, {"r", 4}};
  json b = {{"r", 4}, {"q", 3}, {"p", 3}};
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(json{{"p", 3}, {"q", 3}, {"r", 5}}));
  // FNV-1a of the empty object "{}"
  CHECK(config_hash(json::object()) == "08f44b07b5901a25");
  json m = metadata(a, 7);
  CHECK(m["seed"] == 7);
  CHECK(m["config_hash"] == config_hash(a));
  CHECK(m.contains("tolerances"));
}

TEST_CASE("crown bundle round-trip") {
  Representation rep = triangle_group({3, 3, 4, kPi});
  Crown c = build_crown(rep, kTauWord, 3, {6, 1e-3, 1e-6});
  EmbeddednessReport r = embeddedness(c);
  REQUIRE(r.status == EmbeddednessReport::Embedded);
  json j = export_uniformization(c, r, metadata(json::object(), 1));
  CrownBundle b = read_bundle(json::parse(j.dump()));
  CHECK(b.generators.size() == 3);
  CHECK(b.generators[1] == rep.generators[1].matrix);
  CHECK(b.gamma_word == std::vector<int>{3, 2, 1, 2});
  CHECK(b.arcs.size() == c.arcs.size());
  CHECK(b.limit_set.size() == c.limit_sample.points.size());
  CHECK(b.report["status"] == "EMBEDDED");
  CHECK(b.meta["seed"] == 1);
  for (std::size_t k = 0; k < b.arcs.size(); ++k) {
    CHECK(b.arcs[k].coset == word_label(c.arcs[k].coset));
    CHECK(chordal(b.arcs[k].arc.from, c.arcs[k].arc.from) == 0.0);
    CHECK(b.arcs[k].polyline.size() >= 2);
  }
  CHECK_THROWS_AS(read_bundle(json{{"generators", json::array()}}), GeometryError);
}

TEST_CASE("export refuses a crossing crown") {
  Representation rep = triangle_group({3, 3, 4, kPi});
  Crown c = build_crown(rep, kTauWord, 0);
  EmbeddednessReport r;
  r.status = EmbeddednessReport::Crossing;
  r.witness = std::make_pair(std::size_t{0}, std::size_t{0});
  try {
    export_uniformization(c, r);
    FAIL("expected Crossing");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::Crossing);
  }
}

TEST_CASE("sweep csv round-trip") {
  std::vector<SweepRow> rows(3);
  Gen g(149);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].phase = g.uniform(2.0, 3.0);
    rows[k].tau = {g.normal(), 0.0};
    rows[k].n_points = 10 * k;
    rows[k].sup_estimate = g.uniform(0, 1);
    rows[k].argmax = {g.point(), BoundaryPoint::infinity(), g.point()};
    rows[k].runtime_s = 0.25;
  }
  rows[2].ok = false;
  rows[2].error = "no loxodromic, words";
  std::stringstream ss;
  write_sweep_csv(ss, rows, metadata(json::object(), 3));
  CHECK(ss.str().rfind("#", 0) == 0);
  auto back = read_sweep_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].phase == rows[k].phase);
    CHECK(back[k].tau == rows[k].tau);
    CHECK(back[k].n_points == rows[k].n_points);
    CHECK(back[k].sup_estimate == rows[k].sup_estimate);
    CHECK(back[k].argmax[1].at_infinity);
    CHECK(back[k].argmax[0].t == rows[k].argmax[0].t);
    CHECK(back[k].ok == rows[k].ok);
  }
  CHECK_FALSE(back[2].error.empty());

  SweepConfig cfg;
  json j = sweep_json(rows, cfg, json::object());
  CHECK(j["rows"].size() == 3);
  CHECK(j["protocol"]["word_length"] == cfg.word_length);
  CHECK(j["rows"][2].contains("error"));
  CHECK_FALSE(j["rows"][0].contains("error"));
}
