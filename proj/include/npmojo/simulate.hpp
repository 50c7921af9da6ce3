#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "npmojo/segment.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo {

using Matrix = std::vector<std::vector<double>>;  // row-major, square p x p

// Innovation value = shift + scale * raw, raw drawn from the base law.
struct InnovationLaw {
  enum class Kind { Gaussian, StudentT, ChiSquared, Exponential, Bernoulli };
  Kind kind = Kind::Gaussian;
  double param = 0.0;  // t/chi2: degrees of freedom; exponential: rate; Bernoulli: success probability
  double shift = 0.0;
  double scale = 1.0;
};

struct GarchParams {
  double omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// One stationary segment:
//   ARMA:  X_t = sum_i ar[i] X_{t-1-i} + e_t + sum_i ma[i] e_{t-1-i}
//   GARCH: X_t = sigma_t e_t,  sigma_t^2 = omega + alpha X_{t-1}^2 + beta sigma_{t-1}^2 (per coordinate)
// where e_t = mix * (innovations drawn from `laws`), then `mean` is added.
struct SegmentProcess {
  std::vector<InnovationLaw> laws{InnovationLaw{}};  // one law for every coordinate, or one per coordinate
  Matrix mix;                                        // empty: identity
  std::vector<Matrix> ar;
  std::vector<Matrix> ma;
  std::optional<GarchParams> garch;
  std::vector<double> mean;  // empty: zero; size 1 broadcasts
};

// Shared: every segment runs its own recursion over the common innovation history
// (with burn-in) and contributes its values on its own interval.
// Continue: one recursion whose parameters switch at the change points.
enum class Coupling { Shared, Continue };

struct CustomSpec {
  std::size_t n = 0;
  std::size_t p = 1;
  std::vector<int> changes;               // segment j covers (changes[j-1], changes[j]]
  std::vector<SegmentProcess> segments;   // changes.size() + 1 entries
  Coupling coupling = Coupling::Shared;
  int burn_in = 500;
};

struct LabeledSeries {
  TimeSeries data;
  Segmentation truth;
  std::map<int, std::vector<int>> detectable_lags;  // lag -> 1-based change indices
  std::string scenario;
};

struct ScenarioSpec {
  std::string id;
  std::size_t n = 0;  // 0: the catalog length
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;  // "burn_in", "n7_scale"
};

// Innovations are shared between segments whose laws have the same base distribution:
// identical (kind, param, coordinate) draw the same raw values at the same time.
LabeledSeries generate_custom(const CustomSpec& spec, std::uint64_t seed);

LabeledSeries generate(const ScenarioSpec& spec);

// Piecewise definition of a catalog scenario at length n (0: catalog length).
CustomSpec scenario_definition(const std::string& id, std::size_t n = 0,
                               const std::map<std::string, double>& overrides = {});

const std::vector<std::string>& catalog_ids();
std::size_t catalog_length(const std::string& id);
std::vector<int> catalog_changes(const std::string& id);

// Throws ConfigError when the AR part has a characteristic root on or inside the unit circle.
void check_stationary(const std::vector<Matrix>& ar);

}  // namespace npmojo
