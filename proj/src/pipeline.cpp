#include "npmojo/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "npmojo/errors.hpp"

namespace npmojo {

int default_bandwidth(std::size_t n) { return static_cast<int>(n / 6); }

SingleLagResult np_mojo_single(const TimeSeries& ts, int lag, int G, const DetectionConfig& cfg) {
  cfg.bootstrap.validate();
  cfg.merge.validate();
  check_bandwidth(ts.n(), G, lag);
  LaggedSeries ls = make_lagged(ts, lag);
  KernelSpec kernel = resolve_kernel(cfg.family, cfg.scale, ls, G, cfg.bootstrap.master_seed);
  LagWorkspace ws(ls, G, kernel, cfg.cache_budget);

  SingleLagResult res;
  res.lag = lag;
  res.bandwidth = G;
  res.profile = ws.profile();
  res.bootstrap = ws.bootstrap(cfg.bootstrap);
  res.estimates = locate_changes(res.profile, res.bootstrap.threshold, cfg.merge);
  for (auto& e : res.estimates) e.score = importance_score(e.stat, res.bootstrap.replicates);
  return res;
}

MultiLagResult np_mojo_multi(const TimeSeries& ts, std::vector<int> lags, int G, const DetectionConfig& cfg) {
  if (lags.empty()) throw ConfigError("lag set must not be empty");
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  MultiLagResult res;
  res.bandwidth = G;
  std::vector<std::vector<ChangePointEstimate>> candidates;
  for (int lag : lags) {
    res.per_lag.push_back(np_mojo_single(ts, lag, G, cfg));
    candidates.push_back(res.per_lag.back().estimates);
  }
  res.merged = multi_lag_merge(candidates, G, cfg.merge, cfg.select);
  return res;
}

std::vector<int> default_bandwidth_ladder(std::size_t n, int levels) {
  const int base = std::max(60, static_cast<int>(n / 16));
  std::vector<int> ladder;
  int prev = base, cur = base;  // G_0, G_1
  for (int m = 1; m <= levels; ++m) {
    if (2 * static_cast<std::size_t>(cur) > n) break;
    ladder.push_back(cur);
    int next = cur + prev;
    prev = cur;
    cur = next;
  }
  return ladder;
}

MultiscaleResult np_mojo_multiscale(const TimeSeries& ts, const std::vector<int>& lags,
                                    const std::vector<int>& bandwidths, const DetectionConfig& cfg) {
  if (bandwidths.empty()) throw ConfigError("bandwidth ladder must not be empty");
  MultiscaleResult res;
  std::vector<std::pair<int, std::vector<ChangePointEstimate>>> levels;
  for (int G : bandwidths) {
    res.per_bandwidth.push_back(np_mojo_multi(ts, lags, G, cfg));
    levels.emplace_back(G, res.per_bandwidth.back().merged);
  }
  res.merged = multiscale_merge(levels, cfg.merge);
  return res;
}

AdaptiveResult adaptive_lags(const TimeSeries& ts, std::vector<int> initial_lags, int G, const DetectionConfig& cfg,
                             int max_lag) {
  if (initial_lags.empty()) throw ConfigError("initial lag set must not be empty");
  AdaptiveResult res;
  res.initial = np_mojo_multi(ts, initial_lags, G, cfg);
  res.merged = res.initial.merged;
  for (const auto& r : res.initial.per_lag) res.lags.push_back(r.lag);
  const double gap = cfg.merge.c * G;
  for (int lag = res.lags.back() + 1; lag <= max_lag && lag < G; ++lag) {
    res.extra.push_back(np_mojo_single(ts, lag, G, cfg));
    res.lags.push_back(lag);
    bool added = false;
    for (const auto& est : res.extra.back().estimates) {
      int nearest = std::numeric_limits<int>::max();
      for (const auto& acc : res.merged) nearest = std::min(nearest, std::abs(est.location - acc.location));
      if (nearest >= gap) {
        res.merged.push_back(est);
        added = true;
      }
    }
    if (!added) break;
  }
  std::stable_sort(res.merged.begin(), res.merged.end(),
                   [](const auto& a, const auto& b) { return a.location < b.location; });
  return res;
}

}  // namespace npmojo
