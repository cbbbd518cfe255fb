#pragma once

#include "crs/boundary.hpp"

#include <string>
#include <vector>

namespace crs {

struct TriangleParams {
  int p = 3, q = 3, r = 4;
  double phase = 3.141592653589793;
};

struct RelatorCheck {
  std::string name;
  int expected_order = 0;
  double measured_order = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct Representation {
  TriangleParams params;
  std::vector<GroupElement> generators;
  std::vector<RelatorCheck> relator_report;
  cplx tau{0.0, 0.0};

  bool relators_pass() const;
};

// Generator indices, 0-based; printed 1-based.
using Word = std::vector<int>;
std::string word_label(const Word& w);
Word parse_word(const std::string& s);

struct WordElement {
  Word word;
  GroupElement g;
};

struct LimitSetSample {
  std::vector<BoundaryPoint> points;
  int word_length = 0;
  double dedup_eps = 0.0;
};

GroupElement complex_reflection(const HVector& c);

// G_{jk} = <c_k, c_j>; |G_12| = cos(pi/p), |G_23| = cos(pi/q), |G_31| = cos(pi/r), arg(G_12 G_23 G_31) = phase.
Eigen::Matrix3cd gram_matrix(const TriangleParams& t);
bool admissible(const TriangleParams& t);
// cos(phase) must stay below this bound for signature (2,1).
double phase_cos_bound(int p, int q, int r);

Representation triangle_group(const TriangleParams& t);
double phase_for_tau(int p, int q, int r, double target_tau);

// The word w = i3 i2 i1 i2 whose trace is the deformation coordinate.
inline const Word kTauWord{2, 1, 0, 1};

GroupElement word_element(const Representation& rep, const Word& w);
std::vector<WordElement> enumerate_words(const Representation& rep, int max_length);

LimitSetSample limit_set(const Representation& rep, int max_length, double eps);
// Greedy farthest-point subsample, deterministic from the first point.
LimitSetSample subsample(const LimitSetSample& s, std::size_t n);

GroupElement heisenberg_translation(cplx w, double s);
GroupElement diagonal_loxodromic(cplx alpha, double s);

}  // namespace crs
