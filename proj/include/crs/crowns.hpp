#pragma once

#include "crs/circles.hpp"
#include "crs/groups.hpp"
#include "crs/slimness.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace crs {

// Arc from the repelling to the attracting fixed point.
Arc axis_at_infinity(const GroupElement& g);

struct CrownArc {
  Word coset;  // g in g<gamma>
  Arc arc;
};

struct Crown {
  Representation rep;
  Word core_word;
  std::vector<CrownArc> arcs;
  LimitSetSample limit_sample;
  int word_length = 0;
};

struct CrownOptions {
  int limit_length = 10;
  double limit_eps = 1e-3;
  double coset_eps = 1e-6;
};

Crown build_crown(const Representation& rep, const Word& gamma, int word_length, const CrownOptions& opt = {});

// Polyline of an arc, endpoints included.
std::vector<BoundaryPoint> arc_polyline(const Arc& a, int n = 32);

struct EmbeddednessReport {
  enum Status { Embedded, Crossing } status = Embedded;
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::optional<BoundaryPoint> witness_point;
  std::size_t arcs_tested = 0;
  std::size_t pairs_tested = 0;
  // Pairs that only touch at an endpoint or are opposite halves of one chain; excluded from the margin.
  std::size_t touching_pairs = 0;
  double region = std::numeric_limits<double>::infinity();
};
const char* to_string(EmbeddednessReport::Status s);

// Tests all pairs among arcs meeting the chordal ball of radius k_radius about `center`.
EmbeddednessReport embeddedness(const std::vector<CrownArc>& arcs,
                                double k_radius = std::numeric_limits<double>::infinity(),
                                const BoundaryPoint& center = BoundaryPoint::finite(0.0, 0.0),
                                Exec exec = Exec::Parallel);
EmbeddednessReport embeddedness(const Crown& c, double k_radius = std::numeric_limits<double>::infinity(),
                                Exec exec = Exec::Parallel);

struct ParametrizedCurve {
  std::function<BoundaryPoint(double)> at;
};

struct CrossingScan {
  double a_min = -20.0, a_max = 0.0;  // near the repelling point
  double b_min = 0.0, b_max = 20.0;   // near the attracting point
  int grid = 2000;
  double f_tol = 1e-12;
};

struct CrossingPair {
  double s_a = 0.0, s_b = 0.0;
  Arc arc;
  BoundaryPoint point;
  double residual = 0.0;
};

struct CrossingReport {
  Arc axis;
  std::size_t brackets = 0;
  std::vector<CrossingPair> pairs;  // certified CROSS against the axis
};

CrossingReport crossing_detector(const ParametrizedCurve& e, const GroupElement& g, const CrossingScan& scan = {});

}  // namespace crs
