#include "npmojo/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "npmojo/errors.hpp"
#include "npmojo/rng.hpp"
#include "npmojo/workspace.hpp"

namespace npmojo {

void BootstrapConfig::validate() const {
  if (reps < 1) throw ConfigError("bootstrap reps must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(b_n > 0.0) || !std::isfinite(b_n)) throw ConfigError("b_n must be positive");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

double default_block_parameter(std::size_t n) { return 1.5 * std::cbrt(static_cast<double>(n)); }

std::vector<double> generate_multipliers(std::size_t len, double b_n, std::mt19937_64& stream) {
  if (len < 1) throw ConfigError("multiplier length must be >= 1");
  if (!(b_n > 0.0)) throw ConfigError("b_n must be positive");
  const double a = std::exp(-1.0 / b_n);
  const double innov = std::sqrt(1.0 - a * a);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> W(len);
  W[0] = normal(stream);
  for (std::size_t t = 1; t < len; ++t) W[t] = a * W[t - 1] + innov * normal(stream);
  return W;
}

std::mt19937_64 replicate_stream(std::uint64_t master_seed, int lag, int G, int r) {
  return keyed_stream(master_seed, {static_cast<std::uint64_t>(StreamTag::Bootstrap), static_cast<std::uint64_t>(lag),
                                    static_cast<std::uint64_t>(G), static_cast<std::uint64_t>(r)});
}

double bootstrap_replicate(const LaggedSeries& ls, int G, const KernelSpec& kernel, std::span<const double> W) {
  LagWorkspace ws(ls, G, kernel);
  return ws.replicate(W);
}

BootstrapResult run_bootstrap(const LaggedSeries& ls, int G, const KernelSpec& kernel, const BootstrapConfig& cfg) {
  cfg.validate();
  LagWorkspace ws(ls, G, kernel);
  return ws.bootstrap(cfg);
}

double bootstrap_threshold(std::vector<double> replicates, double alpha) {
  if (replicates.empty()) throw ConfigError("no bootstrap replicates");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  const auto R = static_cast<long>(replicates.size());
  // The small offset keeps exact products such as 0.9 * 500 from rounding up a rank.
  long rank = static_cast<long>(std::ceil((1.0 - alpha) * static_cast<double>(R) - 1e-9));
  rank = std::clamp(rank, 1L, R);
  auto it = replicates.begin() + (rank - 1);
  std::nth_element(replicates.begin(), it, replicates.end());
  return *it;
}

double importance_score(double stat_value, std::span<const double> replicates) {
  if (replicates.empty()) throw ConfigError("importance score needs replicates");
  std::size_t count = 0;
  for (double r : replicates) count += stat_value >= r;
  return static_cast<double>(count) / static_cast<double>(replicates.size());
}

}  // namespace npmojo
