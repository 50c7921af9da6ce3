#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "npmojo/kernels.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo {

// T_lag(G, k) for k = G..n-G (values[k - G]).
struct DetectorProfile {
  std::vector<double> values;
  int bandwidth = 0;
  int lag = 0;
  std::size_t n = 0;
  KernelSpec kernel{KernelFamily::QuadExpH2, 1.0};
  std::uint64_t kernel_evaluations = 0;

  int first_k() const noexcept { return bandwidth; }
  int last_k() const noexcept { return static_cast<int>(n) - bandwidth; }
  double at(int k) const { return values.at(static_cast<std::size_t>(k - bandwidth)); }
};

// Throws ConfigError unless n >= 2G, G > lag and G >= 2 (n is the source length).
void check_bandwidth(std::size_t n, int G, int lag);

// Sequential-update profile, O(nG) kernel evaluations, no Gram cache.
DetectorProfile detector_profile(const LaggedSeries& ls, int G, const KernelSpec& kernel);

// Statistic at one k by direct summation over both windows.
double direct_detector(const LaggedSeries& ls, int G, int k, const KernelSpec& kernel);

}  // namespace npmojo
