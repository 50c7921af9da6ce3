#include "npmojo/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "npmojo/errors.hpp"

namespace npmojo {

TimeSeries::TimeSeries(std::size_t n, std::size_t p) : TimeSeries(n, p, std::vector<double>(n * p, 0.0)) {}

TimeSeries::TimeSeries(std::size_t n, std::size_t p, std::vector<double> values)
    : n_(n), p_(p), values_(std::move(values)) {
  if (n_ < 1 || p_ < 1) throw ConfigError("time series needs n >= 1 and p >= 1");
  if (values_.size() != n_ * p_) throw ConfigError("time series value count does not match n*p");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
    throw InputError("time series contains non-finite values");
}

LaggedSeries::LaggedSeries(std::size_t rows, std::size_t width, int lag, std::vector<double> values)
    : rows_(rows), width_(width), lag_(lag), values_(std::move(values)) {}

LaggedSeries make_lagged(const TimeSeries& ts, int lag) {
  if (lag < 0 || static_cast<std::size_t>(lag) >= ts.n())
    throw ConfigError("lag " + std::to_string(lag) + " must satisfy 0 <= lag < n");
  const std::size_t p = ts.p();
  const std::size_t m = ts.n() - static_cast<std::size_t>(lag);
  std::vector<double> out(m * 2 * p);
  for (std::size_t t = 0; t < m; ++t) {
    auto a = ts.row(t);
    auto b = ts.row(t + static_cast<std::size_t>(lag));
    std::copy(a.begin(), a.end(), out.begin() + static_cast<std::ptrdiff_t>(t * 2 * p));
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(t * 2 * p + p));
  }
  return LaggedSeries(m, 2 * p, lag, std::move(out));
}

}  // namespace npmojo
