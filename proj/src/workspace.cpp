#include "npmojo/workspace.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <variant>

#include "engine.hpp"
#include "npmojo/errors.hpp"

namespace npmojo {

struct LagWorkspace::Impl {
  LaggedSeries ls;
  long n, G, lag;
  KernelSpec kernel;
  std::variant<detail::BandGram, detail::LazyGram> gram;
  detail::Sums sums;
  DetectorProfile profile;

  static std::variant<detail::BandGram, detail::LazyGram> make_gram(const LaggedSeries& ls, int G,
                                                                   const KernelSpec& kernel, std::size_t budget) {
    const std::size_t reach = static_cast<std::size_t>(2 * G - ls.lag() - 1);
    if (ls.size() * (2 * reach + 1) <= budget) return detail::BandGram(ls, kernel, reach);
    return detail::LazyGram(ls, kernel);
  }

  Impl(const LaggedSeries& series, int bandwidth, const KernelSpec& k, std::size_t budget)
      : ls(series),
        n(static_cast<long>(series.size()) + series.lag()),
        G(bandwidth),
        lag(series.lag()),
        kernel(k),
        gram(make_gram(ls, bandwidth, k, budget)) {
    std::visit(
        [&](const auto& g) {
          sums = detail::compute_sums(g, n, G, lag);
          profile.kernel_evaluations = g.evaluations();
        },
        gram);
    profile.bandwidth = static_cast<int>(G);
    profile.lag = static_cast<int>(lag);
    profile.n = static_cast<std::size_t>(n);
    profile.kernel = kernel;
    const double w = static_cast<double>(G - lag);
    profile.values.reserve(sums.S11.size());
    for (double s : sums.S11) profile.values.push_back(kernel.sign_factor() * s / (w * w));
  }

  // One batch of kLanes replicate maxima from lane-interleaved multipliers.
  void batch(const double* wts, double* out) const {
    if (auto* band = std::get_if<detail::BandGram>(&gram)) {
      detail::replicate_batch(*band, sums, n, G, lag, kernel.sign_factor(), wts, out);
    } else {
      // Private copy: the lazy evaluator's counter is not shared across threads.
      detail::LazyGram local = std::get<detail::LazyGram>(gram);
      detail::replicate_batch(local, sums, n, G, lag, kernel.sign_factor(), wts, out);
    }
  }
};

LagWorkspace::LagWorkspace(const LaggedSeries& ls, int G, const KernelSpec& kernel, std::size_t cache_budget) {
  check_bandwidth(ls.size() + static_cast<std::size_t>(ls.lag()), G, ls.lag());
  impl_ = std::make_unique<Impl>(ls, G, kernel, cache_budget);
}

LagWorkspace::~LagWorkspace() = default;
LagWorkspace::LagWorkspace(LagWorkspace&&) noexcept = default;
LagWorkspace& LagWorkspace::operator=(LagWorkspace&&) noexcept = default;

bool LagWorkspace::cached() const noexcept { return std::holds_alternative<detail::BandGram>(impl_->gram); }

const DetectorProfile& LagWorkspace::profile() const noexcept { return impl_->profile; }

double LagWorkspace::replicate(std::span<const double> W) const {
  const auto len = static_cast<std::size_t>(impl_->n - impl_->G);
  if (W.size() != len) throw ConfigError("multiplier vector must have length n - G");
  constexpr int L = detail::kLanes;
  std::vector<double> wts(len * L, 0.0);
  for (std::size_t t = 0; t < len; ++t) wts[t * L] = W[t];
  double out[L];
  impl_->batch(wts.data(), out);
  return out[0];
}

BootstrapResult LagWorkspace::bootstrap(const BootstrapConfig& cfg) const {
  cfg.validate();
  constexpr int L = detail::kLanes;
  const int R = cfg.reps;
  const auto len = static_cast<std::size_t>(impl_->n - impl_->G);
  const int batches = (R + L - 1) / L;
  BootstrapResult res;
  res.replicates.assign(static_cast<std::size_t>(R), 0.0);

  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<double> wts(len * L);
    double out[L];
    for (int b = next.fetch_add(1); b < batches; b = next.fetch_add(1)) {
      std::fill(wts.begin(), wts.end(), 0.0);
      const int first = b * L;
      const int count = std::min(L, R - first);
      for (int l = 0; l < count; ++l) {
        auto stream = replicate_stream(cfg.master_seed, static_cast<int>(impl_->lag), static_cast<int>(impl_->G),
                                       first + l);
        auto W = generate_multipliers(len, cfg.b_n, stream);
        for (std::size_t t = 0; t < len; ++t) wts[t * L + static_cast<std::size_t>(l)] = W[t];
      }
      impl_->batch(wts.data(), out);
      for (int l = 0; l < count; ++l) res.replicates[static_cast<std::size_t>(first + l)] = out[l];
    }
  };
  const int nthreads = std::max(1, std::min(cfg.threads, batches));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  res.threshold = bootstrap_threshold(res.replicates, cfg.alpha);
  return res;
}

}  // namespace npmojo
