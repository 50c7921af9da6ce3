#include "npmojo/segment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "npmojo/errors.hpp"

namespace npmojo {

void MergeParams::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
  if (!(c > 0.0 && c <= 2.0)) throw ConfigError("merge parameter c must lie in (0, 2]");
  if (!(big_c > 0.0 && big_c < 1.0)) throw ConfigError("multiscale parameter C must lie in (0, 1)");
  if (!(min_exceed_frac >= 0.0 && min_exceed_frac < 1.0)) throw ConfigError("min_exceed_frac must lie in [0, 1)");
}

Segmentation::Segmentation(std::size_t n_, std::vector<int> changes_) : n(n_), changes(std::move(changes_)) {
  if (n < 1) throw ConfigError("segmentation needs n >= 1");
  for (std::size_t i = 0; i < changes.size(); ++i) {
    if (changes[i] < 1 || static_cast<std::size_t>(changes[i]) > n - 1)
      throw ConfigError("change point outside [1, n-1]");
    if (i > 0 && changes[i] <= changes[i - 1]) throw ConfigError("change points must be strictly increasing");
  }
}

int floor_fraction(double fraction, int G) { return static_cast<int>(std::floor(fraction * G + 1e-9)); }

namespace {

// out[i] = max v[i+lo .. i+hi] clipped to the array, -inf when empty.
std::vector<double> sliding_max(const std::vector<double>& v, long lo, long hi) {
  const long N = static_cast<long>(v.size());
  std::vector<double> out(v.size(), -std::numeric_limits<double>::infinity());
  std::deque<long> dq;  // indices with decreasing values
  long next = 0;
  for (long i = 0; i < N; ++i) {
    const long a = std::max(0L, i + lo), b = std::min(N - 1, i + hi);
    while (next <= b) {
      while (!dq.empty() && v[static_cast<std::size_t>(dq.back())] <= v[static_cast<std::size_t>(next)]) dq.pop_back();
      dq.push_back(next++);
    }
    while (!dq.empty() && dq.front() < a) dq.pop_front();
    if (a <= b && !dq.empty()) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(dq.front())];
  }
  return out;
}

}  // namespace

std::vector<ChangePointEstimate> locate_changes(const DetectorProfile& profile, double threshold,
                                                const MergeParams& params) {
  params.validate();
  const auto& v = profile.values;
  const long N = static_cast<long>(v.size());
  const long radius = floor_fraction(params.eta, profile.bandwidth);
  const long min_run = floor_fraction(params.min_exceed_frac, profile.bandwidth);
  // The statistic is nonnegative in exact arithmetic, so values at or below zero never count.
  const double level = std::max(threshold, 0.0);

  std::vector<double> left = radius > 0 ? sliding_max(v, -radius, -1)
                                        : std::vector<double>(v.size(), -std::numeric_limits<double>::infinity());
  std::vector<double> right = radius > 0 ? sliding_max(v, 1, radius)
                                         : std::vector<double>(v.size(), -std::numeric_limits<double>::infinity());

  std::vector<ChangePointEstimate> out;
  long i = 0;
  while (i < N) {
    if (!(v[static_cast<std::size_t>(i)] > level)) {
      ++i;
      continue;
    }
    long j = i;
    while (j < N && v[static_cast<std::size_t>(j)] > level) ++j;
    if (j - i > min_run) {
      for (long t = i; t < j; ++t) {
        const auto ut = static_cast<std::size_t>(t);
        if (v[ut] > left[ut] && v[ut] >= right[ut])
          out.push_back({profile.first_k() + static_cast<int>(t), profile.lag, v[ut], 0.0, profile.bandwidth});
      }
    }
    i = j;
  }
  return out;
}

std::vector<ChangePointEstimate> multi_lag_merge(const std::vector<std::vector<ChangePointEstimate>>& candidates,
                                                 int G, const MergeParams& params, SelectBy select) {
  params.validate();
  std::vector<ChangePointEstimate> pool;
  for (const auto& lag_list : candidates) pool.insert(pool.end(), lag_list.begin(), lag_list.end());
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    return a.location != b.location ? a.location < b.location : a.lag < b.lag;
  });
  auto better = [select](const ChangePointEstimate& a, const ChangePointEstimate& b) {
    const double pa = select == SelectBy::Score ? a.score : a.stat;
    const double pb = select == SelectBy::Score ? b.score : b.stat;
    if (pa != pb) return pa > pb;
    const double sa = select == SelectBy::Score ? a.stat : a.score;
    const double sb = select == SelectBy::Score ? b.stat : b.score;
    if (sa != sb) return sa > sb;
    if (a.location != b.location) return a.location < b.location;
    return a.lag < b.lag;
  };
  const double width = params.c * G;
  std::vector<ChangePointEstimate> out;
  std::size_t i = 0;
  while (i < pool.size()) {
    const int anchor = pool[i].location;
    std::size_t best = i;
    std::size_t j = i + 1;
    for (; j < pool.size() && pool[j].location - anchor < width; ++j)
      if (better(pool[j], pool[best])) best = j;
    out.push_back(pool[best]);
    i = j;
  }
  return out;
}

std::vector<ChangePointEstimate> multiscale_merge(
    const std::vector<std::pair<int, std::vector<ChangePointEstimate>>>& per_bandwidth, const MergeParams& params) {
  params.validate();
  for (std::size_t r = 1; r < per_bandwidth.size(); ++r)
    if (per_bandwidth[r].first <= per_bandwidth[r - 1].first)
      throw ConfigError("multiscale bandwidths must be strictly increasing");
  std::vector<ChangePointEstimate> accepted;
  for (std::size_t r = 0; r < per_bandwidth.size(); ++r) {
    auto level = per_bandwidth[r].second;
    std::sort(level.begin(), level.end(),
              [](const auto& a, const auto& b) { return a.location < b.location; });
    if (r == 0) {
      accepted = level;
      continue;
    }
    const double gap = params.big_c * per_bandwidth[r].first;
    for (const auto& est : level) {
      bool far = true;
      for (const auto& acc : accepted)
        if (std::abs(est.location - acc.location) < gap) {
          far = false;
          break;
        }
      if (far) accepted.push_back(est);
    }
  }
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const auto& a, const auto& b) { return a.location < b.location; });
  return accepted;
}

}  // namespace npmojo
