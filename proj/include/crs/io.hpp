#pragma once

#include "crs/crowns.hpp"
#include "crs/slimness.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace crs {

using json = nlohmann::json;

// {"z":[re,im],"t":t} or the string "inf".
json to_json(const BoundaryPoint& p);
BoundaryPoint point_from_json(const json& j);
json to_json(const Mat3& m);
Mat3 matrix_from_json(const json& j);
json to_json(const std::vector<BoundaryPoint>& pts);
std::vector<BoundaryPoint> points_from_json(const json& j);
json to_json(const CurveSample& c);
CurveSample curve_from_json(const json& j);

// FNV-1a over the compact dump, as 16 hex digits.
std::string config_hash(const json& config);
json metadata(const json& config, std::uint64_t seed);

struct BundleArc {
  std::string coset;
  Arc arc;
  std::vector<BoundaryPoint> polyline;
};

struct CrownBundle {
  std::vector<Mat3> generators;
  std::vector<int> gamma_word;  // 1-based letters
  std::vector<BoundaryPoint> limit_set;
  std::vector<BundleArc> arcs;
  json report;
  json meta;
};

// Refuses a crossing crown with a Crossing error naming the witness pair.
CrownBundle make_bundle(const Crown& c, const EmbeddednessReport& r, const json& meta = json::object());
json to_json(const CrownBundle& b);
CrownBundle read_bundle(const json& j);
json export_uniformization(const Crown& c, const EmbeddednessReport& r, const json& meta = json::object());

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const json& meta);
std::vector<SweepRow> read_sweep_csv(std::istream& is);
json sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& cfg, const json& meta);

std::string point_token(const BoundaryPoint& p);
BoundaryPoint point_from_token(const std::string& s);

}  // namespace crs
