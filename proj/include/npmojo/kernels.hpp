#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace npmojo {

class LaggedSeries;

enum class KernelFamily { GaussH1, QuadExpH2, EnergyH3 };
enum class KernelSign { WithinMinusCross, CrossMinusWithin };

// Kernel family and scale (beta for h1, delta for h2, gamma for h3).
class KernelSpec {
 public:
  KernelSpec(KernelFamily family, double scale);

  KernelFamily family() const noexcept { return family_; }
  double scale() const noexcept { return scale_; }
  KernelSign sign() const noexcept {
    return family_ == KernelFamily::EnergyH3 ? KernelSign::CrossMinusWithin : KernelSign::WithinMinusCross;
  }
  // +1 or -1 multiplying (within + within - 2 cross).
  double sign_factor() const noexcept { return family_ == KernelFamily::EnergyH3 ? -1.0 : 1.0; }

  // Kernel value for two points of dimension d, no checks.
  double operator()(const double* x, const double* y, std::size_t d) const noexcept {
    double sq = 0.0;
    switch (family_) {
      case KernelFamily::GaussH1:
        for (std::size_t r = 0; r < d; ++r) {
          double u = x[r] - y[r];
          sq += u * u;
        }
        return std::exp(-c_ * sq);
      case KernelFamily::QuadExpH2: {
        double prod = 1.0;
        for (std::size_t r = 0; r < d; ++r) {
          double u = x[r] - y[r];
          double u2 = u * u;
          sq += u2;
          prod *= 1.0 - u2 * c2_;
        }
        return prod * std::exp(-c_ * sq);
      }
      case KernelFamily::EnergyH3:
        for (std::size_t r = 0; r < d; ++r) {
          double u = x[r] - y[r];
          sq += u * u;
        }
        return sq == 0.0 ? 0.0 : std::pow(sq, c_);
    }
    return 0.0;
  }

 private:
  KernelFamily family_;
  double scale_;
  double c_ = 0.0;   // exponent multiplier
  double c2_ = 0.0;  // h2 polynomial factor 1/(2 delta)
};

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(const std::string& name);

// Throws ConfigError on dimension mismatch.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

inline constexpr std::size_t kMedianTrickCap = 50000;

// Half the lower median of ||Y_s - Y_t||^2 over pairs with 0 < |s - t| <= 2G - lag.
// Above `cap` eligible pairs, `cap` pairs are drawn uniformly (with replacement) from a seeded stream.
double median_trick(const LaggedSeries& ls, int G, std::size_t cap = kMedianTrickCap, std::uint64_t seed = 0);

// Kernel for one lag: explicit scale when given, otherwise the median trick
// (h2: delta; h1: beta^2 = 1 / (2 delta); h3: gamma = 1).
KernelSpec resolve_kernel(KernelFamily family, std::optional<double> explicit_scale, const LaggedSeries& ls,
                          int G, std::uint64_t seed = 0);

}  // namespace npmojo
