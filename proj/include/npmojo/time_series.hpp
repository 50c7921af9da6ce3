#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace npmojo {

// n x p observations stored row-major; row t is X_{t+1}.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::size_t n, std::size_t p);
  TimeSeries(std::size_t n, std::size_t p, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }
  std::span<const double> row(std::size_t t) const { return {values_.data() + t * p_, p_}; }
  std::span<double> row(std::size_t t) { return {values_.data() + t * p_, p_}; }
  double operator()(std::size_t t, std::size_t j) const { return values_[t * p_ + j]; }
  double& operator()(std::size_t t, std::size_t j) { return values_[t * p_ + j]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<double> values_;
};

// Rows Y_t = (X_t, X_{t+lag}), t = 1..n-lag, each of width 2p.
class LaggedSeries {
 public:
  LaggedSeries() = default;
  LaggedSeries(std::size_t rows, std::size_t width, int lag, std::vector<double> values);

  std::size_t size() const noexcept { return rows_; }
  std::size_t width() const noexcept { return width_; }
  int lag() const noexcept { return lag_; }
  std::span<const double> row(std::size_t t) const { return {values_.data() + t * width_, width_}; }
  const double* data() const noexcept { return values_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t width_ = 0;
  int lag_ = 0;
  std::vector<double> values_;
};

// Throws ConfigError unless 0 <= lag < n.
LaggedSeries make_lagged(const TimeSeries& ts, int lag);

}  // namespace npmojo
