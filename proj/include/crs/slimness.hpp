#pragma once

#include "crs/circles.hpp"
#include "crs/groups.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace crs {

enum class Exec { Serial, Parallel };

struct SlimnessReport {
  double sup_estimate = 0.0;
  std::array<BoundaryPoint, 3> argmax_triple{};
  std::array<int, 3> argmax_index{-1, -1, -1};
  std::size_t n_points = 0;
  std::uint64_t n_triples_evaluated = 0;
  bool refined = false;
};

struct HyperconvexityReport {
  double min_collinearity = 0.0;
  std::array<BoundaryPoint, 3> witness{};
  std::array<int, 3> witness_index{-1, -1, -1};
};

inline constexpr std::size_t kMaxScanPoints = 400;

SlimnessReport sup_cartan(const std::vector<BoundaryPoint>& pts, bool refine = false, bool closed = false,
                          Exec exec = Exec::Parallel);
SlimnessReport sup_cartan(const CurveSample& e, bool refine = false, Exec exec = Exec::Parallel);
SlimnessReport sup_cartan(const LimitSetSample& e, bool refine = false, Exec exec = Exec::Parallel);

HyperconvexityReport hyperconvexity(const std::vector<BoundaryPoint>& pts, Exec exec = Exec::Parallel);

enum class ParabolicKind { Vertical, Screw, Horizontal };
ParabolicKind parse_parabolic_kind(const std::string& s);
SlimnessReport parabolic_obstruction_demo(ParabolicKind kind, int iterates = 50);

struct SweepConfig {
  int p = 3, q = 3, r = 4;
  std::vector<double> phases;
  int word_length = 10;
  int n_points = 200;
  double dedup_eps = 1e-3;
  bool refine = false;
};

struct SweepRow {
  double phase = 0.0;
  cplx tau{0.0, 0.0};
  std::size_t n_points = 0;
  double sup_estimate = 0.0;
  std::array<BoundaryPoint, 3> argmax{};
  bool ok = true;
  std::string error;
  double runtime_s = 0.0;
};

// Phases skipped when `done` returns true; `on_row` sees each finished row.
std::vector<SweepRow> sweep(const SweepConfig& cfg, const std::function<bool(double)>& done = {},
                            const std::function<void(const SweepRow&)>& on_row = {});

// Evenly spaced phases from the real phase pi down to where tau reaches tau_end.
std::vector<double> phases_toward_tau(int p, int q, int r, double tau_end, int count);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace crs
