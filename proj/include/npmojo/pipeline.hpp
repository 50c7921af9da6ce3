#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "npmojo/bootstrap.hpp"
#include "npmojo/detector.hpp"
#include "npmojo/segment.hpp"
#include "npmojo/workspace.hpp"

namespace npmojo {

struct DetectionConfig {
  KernelFamily family = KernelFamily::QuadExpH2;
  std::optional<double> scale;  // unset: median trick (h1, h2) or gamma = 1 (h3)
  BootstrapConfig bootstrap;
  MergeParams merge;
  SelectBy select = SelectBy::Score;
  std::size_t cache_budget = kGramCacheBudget;
};

struct SingleLagResult {
  int lag = 0;
  int bandwidth = 0;
  DetectorProfile profile;
  BootstrapResult bootstrap;
  std::vector<ChangePointEstimate> estimates;

  double threshold() const noexcept { return bootstrap.threshold; }
};

struct MultiLagResult {
  int bandwidth = 0;
  std::vector<SingleLagResult> per_lag;
  std::vector<ChangePointEstimate> merged;
};

struct MultiscaleResult {
  std::vector<MultiLagResult> per_bandwidth;
  std::vector<ChangePointEstimate> merged;
};

struct AdaptiveResult {
  MultiLagResult initial;
  std::vector<SingleLagResult> extra;  // lags max(initial)+1, ... in order
  std::vector<ChangePointEstimate> merged;
  std::vector<int> lags;  // every lag that was run
};

// make_lagged -> kernel scale -> profile -> bootstrap -> locate_changes -> scores.
SingleLagResult np_mojo_single(const TimeSeries& ts, int lag, int G, const DetectionConfig& cfg);

MultiLagResult np_mojo_multi(const TimeSeries& ts, std::vector<int> lags, int G, const DetectionConfig& cfg);

// Fibonacci-type ladder G_m = G_{m-1} + G_{m-2} from G_0 = G_1 = max(60, n/16),
// keeping at most `levels` bandwidths with 2G <= n.
std::vector<int> default_bandwidth_ladder(std::size_t n, int levels = 4);

MultiscaleResult np_mojo_multiscale(const TimeSeries& ts, const std::vector<int>& lags,
                                    const std::vector<int>& bandwidths, const DetectionConfig& cfg);

inline constexpr int kDefaultMaxLag = 20;

// Multi-lag run on `initial_lags`, then single lags max+1, max+2, ... until one
// adds no estimate at distance >= cG from those accepted, or max_lag is passed.
AdaptiveResult adaptive_lags(const TimeSeries& ts, std::vector<int> initial_lags, int G, const DetectionConfig& cfg,
                             int max_lag = kDefaultMaxLag);

// floor(n / 6).
int default_bandwidth(std::size_t n);

}  // namespace npmojo
