#include "crs/slimness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

namespace crs {

std::vector<SweepRow> sweep(const SweepConfig& cfg, const std::function<bool(double)>& done,
                            const std::function<void(const SweepRow&)>& on_row) {
  std::vector<double> todo;
  for (double ph : cfg.phases)
    if (!done || !done(ph)) todo.push_back(ph);
  const long n = static_cast<long>(todo.size());
  std::vector<SweepRow> rows(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    SweepRow& row = rows[i];
    row.phase = todo[i];
    try {
      Representation rep = triangle_group({cfg.p, cfg.q, cfg.r, row.phase});
      row.tau = rep.tau;
      LimitSetSample ls = subsample(limit_set(rep, cfg.word_length, cfg.dedup_eps), cfg.n_points);
      row.n_points = ls.points.size();
      SlimnessReport s = sup_cartan(ls, cfg.refine, Exec::Serial);
      row.sup_estimate = s.sup_estimate;
      row.argmax = s.argmax_triple;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_row) {
#pragma omp critical(sweep_row)
      on_row(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.tau.real() < b.tau.real();
  });
  return rows;
}

std::vector<double> phases_toward_tau(int p, int q, int r, double tau_end, int count) {
  if (count < 2) throw GeometryError(ErrorCode::BadInput, "phase count must be at least 2");
  double end = phase_for_tau(p, q, r, tau_end);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(std::numbers::pi + (end - std::numbers::pi) * k / (count - 1));
  return out;
}

namespace {
std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    double avg = 0.5 * (i + j) + 1;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw GeometryError(ErrorCode::BadInput, "spearman needs paired samples");
  auto rx = ranks(x), ry = ranks(y);
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n, my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace crs
