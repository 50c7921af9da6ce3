#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "npmojo/bootstrap.hpp"
#include "npmojo/detector.hpp"

namespace npmojo {

// Default limit on cached Gram entries (doubles) for one lag.
inline constexpr std::size_t kGramCacheBudget = std::size_t{1} << 25;

// Profile and bootstrap for one (lag, G, kernel) sharing a banded Gram cache.
// The band holds h(Y_r, Y_s) for |r - s| <= 2G - lag - 1; when it would exceed
// `cache_budget` entries, kernel values are recomputed on demand instead.
class LagWorkspace {
 public:
  LagWorkspace(const LaggedSeries& ls, int G, const KernelSpec& kernel, std::size_t cache_budget = kGramCacheBudget);
  ~LagWorkspace();
  LagWorkspace(LagWorkspace&&) noexcept;
  LagWorkspace& operator=(LagWorkspace&&) noexcept;

  bool cached() const noexcept;
  const DetectorProfile& profile() const noexcept;
  double replicate(std::span<const double> W) const;
  BootstrapResult bootstrap(const BootstrapConfig& cfg) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace npmojo
