#include "npmojo/detector.hpp"

#include <string>

#include "engine.hpp"
#include "npmojo/errors.hpp"

namespace npmojo {

void check_bandwidth(std::size_t n, int G, int lag) {
  if (G < 2) throw ConfigError("bandwidth G must be >= 2 (got " + std::to_string(G) + ")");
  if (G <= lag) throw ConfigError("bandwidth G=" + std::to_string(G) + " must exceed lag " + std::to_string(lag));
  if (n < 2 * static_cast<std::size_t>(G))
    throw ConfigError("series length " + std::to_string(n) + " is shorter than 2G=" + std::to_string(2 * G));
}

DetectorProfile detector_profile(const LaggedSeries& ls, int G, const KernelSpec& kernel) {
  const std::size_t n = ls.size() + static_cast<std::size_t>(ls.lag());
  check_bandwidth(n, G, ls.lag());
  detail::LazyGram gram(ls, kernel);
  auto sums = detail::compute_sums(gram, static_cast<long>(n), G, ls.lag());
  DetectorProfile out;
  out.bandwidth = G;
  out.lag = ls.lag();
  out.n = n;
  out.kernel = kernel;
  out.kernel_evaluations = gram.evaluations();
  const double w = G - ls.lag();
  out.values.reserve(sums.S11.size());
  for (double s : sums.S11) out.values.push_back(kernel.sign_factor() * s / (w * w));
  return out;
}

double direct_detector(const LaggedSeries& ls, int G, int k, const KernelSpec& kernel) {
  const int lag = ls.lag();
  const int n = static_cast<int>(ls.size()) + lag;
  check_bandwidth(static_cast<std::size_t>(n), G, lag);
  if (k < G || k > n - G) throw ConfigError("k out of range [G, n-G]");
  // 1-based indices: left {k-G+1..k-lag}, right {k+1..k+G-lag}; row index = t - 1.
  auto h = [&](int s, int t) { return kernel_eval(kernel, ls.row(s - 1), ls.row(t - 1)); };
  double within_left = 0.0, within_right = 0.0, cross = 0.0;
  for (int s = k - G + 1; s <= k - lag; ++s)
    for (int t = k - G + 1; t <= k - lag; ++t) within_left += h(s, t);
  for (int s = k + 1; s <= k + G - lag; ++s)
    for (int t = k + 1; t <= k + G - lag; ++t) within_right += h(s, t);
  for (int s = k - G + 1; s <= k - lag; ++s)
    for (int t = k + 1; t <= k + G - lag; ++t) cross += h(s, t);
  const double w = G - lag;
  return kernel.sign_factor() * (within_left + within_right - 2.0 * cross) / (w * w);
}

}  // namespace npmojo
