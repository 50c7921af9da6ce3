#include "npmojo/kernels.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "npmojo/errors.hpp"
#include "npmojo/rng.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo {

KernelSpec::KernelSpec(KernelFamily family, double scale) : family_(family), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("kernel scale must be positive and finite");
  switch (family) {
    case KernelFamily::GaussH1:
      c_ = 0.5 * scale * scale;
      break;
    case KernelFamily::QuadExpH2:
      c_ = 1.0 / (4.0 * scale);
      c2_ = 1.0 / (2.0 * scale);
      break;
    case KernelFamily::EnergyH3:
      if (!(scale < 2.0)) throw ConfigError("energy kernel exponent must lie in (0, 2)");
      c_ = 0.5 * scale;
      break;
  }
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::GaussH1: return "h1";
    case KernelFamily::QuadExpH2: return "h2";
    case KernelFamily::EnergyH3: return "h3";
  }
  return "?";
}

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "h1") return KernelFamily::GaussH1;
  if (name == "h2") return KernelFamily::QuadExpH2;
  if (name == "h3") return KernelFamily::EnergyH3;
  throw ConfigError("unknown kernel '" + name + "' (expected h1, h2 or h3)");
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw ConfigError("kernel arguments must have equal nonzero dimension");
  return spec(x.data(), y.data(), x.size());
}

namespace {

double squared_distance(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double u = a[r] - b[r];
    s += u * u;
  }
  return s;
}

}  // namespace

double median_trick(const LaggedSeries& ls, int G, std::size_t cap, std::uint64_t seed) {
  if (cap < 1) throw ConfigError("median trick cap must be >= 1");
  const std::size_t m = ls.size();
  if (m < 2) throw ConfigError("median trick needs at least two rows");
  const long reach = 2L * G - ls.lag();
  if (reach < 1) throw ConfigError("median trick: no eligible pairs (2G - lag < 1)");
  const std::size_t dmax = std::min<std::size_t>(static_cast<std::size_t>(reach), m - 1);
  const std::size_t d = ls.width();

  std::size_t eligible = 0;
  for (std::size_t sep = 1; sep <= dmax; ++sep) eligible += m - sep;

  std::vector<double> dist;
  if (eligible <= cap) {
    dist.reserve(eligible);
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = s + 1; t <= std::min(s + dmax, m - 1); ++t)
        dist.push_back(squared_distance(ls.row(s).data(), ls.row(t).data(), d));
  } else {
    auto gen = keyed_stream(seed, {static_cast<std::uint64_t>(StreamTag::MedianTrick),
                                   static_cast<std::uint64_t>(ls.lag()), static_cast<std::uint64_t>(G)});
    std::uniform_int_distribution<std::size_t> pick_s(0, m - 1);
    std::uniform_int_distribution<std::size_t> pick_sep(1, dmax);
    dist.reserve(cap);
    while (dist.size() < cap) {
      std::size_t s = pick_s(gen);
      std::size_t sep = pick_sep(gen);
      if (s + sep >= m) continue;
      dist.push_back(squared_distance(ls.row(s).data(), ls.row(s + sep).data(), d));
    }
  }
  auto mid = dist.begin() + static_cast<std::ptrdiff_t>((dist.size() - 1) / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double delta = *mid / 2.0;
  if (!(delta > 0.0)) throw DegenerateScaleError(ls.lag());
  return delta;
}

KernelSpec resolve_kernel(KernelFamily family, std::optional<double> explicit_scale, const LaggedSeries& ls, int G,
                          std::uint64_t seed) {
  if (explicit_scale) return KernelSpec(family, *explicit_scale);
  switch (family) {
    case KernelFamily::QuadExpH2:
      return KernelSpec(family, median_trick(ls, G, kMedianTrickCap, seed));
    case KernelFamily::GaussH1:
      return KernelSpec(family, std::sqrt(1.0 / (2.0 * median_trick(ls, G, kMedianTrickCap, seed))));
    case KernelFamily::EnergyH3:
      return KernelSpec(family, 1.0);
  }
  throw ConfigError("unknown kernel family");
}

}  // namespace npmojo
