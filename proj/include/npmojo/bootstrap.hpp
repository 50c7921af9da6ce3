#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "npmojo/kernels.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo {

struct BootstrapConfig {
  int reps = 499;
  double alpha = 0.1;
  double b_n = 15.0;
  std::uint64_t master_seed = 0;
  int threads = 1;

  void validate() const;
};

// Recommended b_n = 1.5 n^(1/3).
double default_block_parameter(std::size_t n);

struct BootstrapResult {
  std::vector<double> replicates;  // indexed by replicate r
  double threshold = 0.0;
};

// Gaussian AR(1) with coefficient exp(-1/b_n) and unit marginal variance.
std::vector<double> generate_multipliers(std::size_t len, double b_n, std::mt19937_64& stream);

// Multiplier stream for replicate r of the bootstrap at (lag, G).
std::mt19937_64 replicate_stream(std::uint64_t master_seed, int lag, int G, int r);

// max_k of the multiplier-weighted statistic; W has length n - G.
double bootstrap_replicate(const LaggedSeries& ls, int G, const KernelSpec& kernel, std::span<const double> W);

BootstrapResult run_bootstrap(const LaggedSeries& ls, int G, const KernelSpec& kernel, const BootstrapConfig& cfg);

// Rank ceil((1 - alpha) R) order statistic (1-based, clamped to [1, R]).
double bootstrap_threshold(std::vector<double> replicates, double alpha);

// Fraction of replicates not exceeding stat_value.
double importance_score(double stat_value, std::span<const double> replicates);

}  // namespace npmojo
