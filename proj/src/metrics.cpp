#include "npmojo/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "npmojo/errors.hpp"

namespace npmojo {

namespace {

// Segment boundaries [b_0 = 0, b_1, ..., b_{q+1} = n]; segment j is (b_j, b_{j+1}].
std::vector<long> bounds(const Segmentation& s) {
  std::vector<long> b{0};
  for (int c : s.changes) b.push_back(c);
  b.push_back(static_cast<long>(s.n));
  return b;
}

void check_same_length(const Segmentation& a, const Segmentation& b) {
  if (a.n != b.n) throw ConfigError("segmentations have different lengths");
}

long overlap(long a0, long a1, long b0, long b1) { return std::max(0L, std::min(a1, b1) - std::max(a0, b0)); }

}  // namespace

double covering_metric(const Segmentation& est, const Segmentation& truth) {
  check_same_length(est, truth);
  const auto bt = bounds(truth), be = bounds(est);
  double total = 0.0;
  std::size_t k = 0;  // first estimated segment that can overlap the current true one
  for (std::size_t j = 0; j + 1 < bt.size(); ++j) {
    while (be[k + 1] <= bt[j]) ++k;
    double best = 0.0;
    for (std::size_t i = k; i + 1 < be.size() && be[i] < bt[j + 1]; ++i) {
      const long inter = overlap(bt[j], bt[j + 1], be[i], be[i + 1]);
      const long uni = std::max(bt[j + 1], be[i + 1]) - std::min(bt[j], be[i]);
      best = std::max(best, static_cast<double>(inter) / static_cast<double>(uni));
    }
    total += static_cast<double>(bt[j + 1] - bt[j]) * best;
  }
  return total / static_cast<double>(truth.n);
}

double v_measure(const Segmentation& est, const Segmentation& truth) {
  check_same_length(est, truth);
  const auto bt = bounds(truth), be = bounds(est);
  const double n = static_cast<double>(truth.n);
  auto entropy = [n](const std::vector<long>& b) {
    double h = 0.0;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const double f = static_cast<double>(b[j + 1] - b[j]) / n;
      h -= f * std::log(f);
    }
    return h;
  };
  const double hc = entropy(bt), hk = entropy(be);
  // Nonzero cells of the contingency table come from the merged boundary sweep.
  double hc_given_k = 0.0, hk_given_c = 0.0;
  std::size_t i = 0, j = 0;
  long pos = 0;
  while (pos < static_cast<long>(truth.n)) {
    const long end = std::min(bt[j + 1], be[i + 1]);
    const double cell = static_cast<double>(end - pos);
    const double size_k = static_cast<double>(be[i + 1] - be[i]);
    const double size_c = static_cast<double>(bt[j + 1] - bt[j]);
    hc_given_k -= cell / n * std::log(cell / size_k);
    hk_given_c -= cell / n * std::log(cell / size_c);
    pos = end;
    if (bt[j + 1] == end) ++j;
    if (be[i + 1] == end) ++i;
  }
  const double h = hc == 0.0 ? 1.0 : 1.0 - hc_given_k / hc;
  const double c = hk == 0.0 ? 1.0 : 1.0 - hk_given_c / hk;
  return h + c == 0.0 ? 0.0 : 2.0 * h * c / (h + c);
}

EvalReport evaluate(const Segmentation& est, const Segmentation& truth) {
  return {covering_metric(est, truth), v_measure(est, truth), static_cast<int>(est.changes.size()),
          static_cast<int>(truth.changes.size())};
}

Summary aggregate(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw ConfigError("cannot aggregate an empty report list");
  Summary s;
  s.count = reports.size();
  for (const auto& r : reports) {
    const int d = std::clamp(r.q_hat - r.q_true, -2, 2);
    s.q_diff[static_cast<std::size_t>(d + 2)] += 1.0;
    s.mean_cm += r.cm;
    s.mean_vm += r.vm;
  }
  const double m = static_cast<double>(reports.size());
  for (auto& v : s.q_diff) v /= m;
  s.mean_cm /= m;
  s.mean_vm /= m;
  return s;
}

}  // namespace npmojo
