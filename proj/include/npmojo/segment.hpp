#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "npmojo/detector.hpp"

namespace npmojo {

struct ChangePointEstimate {
  int location = 0;
  int lag = 0;
  double stat = 0.0;
  double score = 0.0;
  int bandwidth = 0;

  bool operator==(const ChangePointEstimate&) const = default;
};

struct MergeParams {
  double eta = 0.4;
  double c = 1.0;
  double big_c = 0.8;
  double min_exceed_frac = 0.02;

  void validate() const;
};

// How a multi-lag cluster picks its representative.
enum class SelectBy { Score, Statistic };

// Change points over {1..n}; changes strictly increasing within [1, n-1].
struct Segmentation {
  std::size_t n = 0;
  std::vector<int> changes;

  Segmentation() = default;
  Segmentation(std::size_t n, std::vector<int> changes);
  bool operator==(const Segmentation&) const = default;
};

// floor(x) guarded against representation error just below an integer.
int floor_fraction(double fraction, int G);

// Local maximisers of the profile above the threshold; see README for the rule.
// Scores are left at 0.
std::vector<ChangePointEstimate> locate_changes(const DetectorProfile& profile, double threshold,
                                                const MergeParams& params);

// Pools per-lag candidates and keeps one representative per cluster
// {theta : theta - anchor < c G}, anchor being the smallest remaining location.
std::vector<ChangePointEstimate> multi_lag_merge(const std::vector<std::vector<ChangePointEstimate>>& candidates,
                                                 int G, const MergeParams& params,
                                                 SelectBy select = SelectBy::Score);

// Bottom-up merge across strictly increasing bandwidths.
std::vector<ChangePointEstimate> multiscale_merge(
    const std::vector<std::pair<int, std::vector<ChangePointEstimate>>>& per_bandwidth, const MergeParams& params);

}  // namespace npmojo
