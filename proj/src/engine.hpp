// Internal sliding-window machinery shared by the detector and the bootstrap.
// Row indices are 0-based lagged rows; window start a = k - G.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "npmojo/kernels.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo::detail {

struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + comp; }
};

// Evaluates the kernel on demand and counts evaluations.
class LazyGram {
 public:
  LazyGram(const LaggedSeries& ls, const KernelSpec& kernel) : data_(ls.data()), d_(ls.width()), kernel_(kernel) {}

  double eval(std::size_t r, std::size_t s) const noexcept {
    ++count_;
    return kernel_(data_ + r * d_, data_ + s * d_, d_);
  }

  struct Row {
    const LazyGram* g;
    std::size_t r;
    double operator[](long off) const noexcept { return g->eval(r, static_cast<std::size_t>(static_cast<long>(r) + off)); }
  };
  Row row(std::size_t r) const noexcept { return {this, r}; }

  std::uint64_t evaluations() const noexcept { return count_; }

 private:
  const double* data_;
  std::size_t d_;
  KernelSpec kernel_;
  mutable std::uint64_t count_ = 0;
};

// Symmetric band of the Gram matrix: row r stores h(r, r + off) for off in [-D, D].
class BandGram {
 public:
  BandGram(const LaggedSeries& ls, const KernelSpec& kernel, std::size_t reach)
      : m_(ls.size()), reach_(reach), stride_(2 * reach + 1), band_(m_ * stride_, 0.0) {
    const double* x = ls.data();
    const std::size_t d = ls.width();
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t off = 0; off <= reach_ && r + off < m_; ++off) {
        double v = kernel(x + r * d, x + (r + off) * d, d);
        band_[r * stride_ + reach_ + off] = v;
        band_[(r + off) * stride_ + reach_ - off] = v;
        ++count_;
      }
    }
  }

  struct Row {
    const double* center;
    double operator[](long off) const noexcept { return center[off]; }
  };
  Row row(std::size_t r) const noexcept { return {band_.data() + r * stride_ + reach_}; }

  std::uint64_t evaluations() const noexcept { return count_; }

 private:
  std::size_t m_;
  std::size_t reach_;
  std::size_t stride_;
  std::vector<double> band_;
  std::uint64_t count_ = 0;
};

// Unweighted window sums. With w = G - lag:
//   F[j]  = sum_{s in [j, j+w)} h(j, s)
//   B[j]  = sum_{s in (j, j+w]} h(j+w, s)
//   V1..V4[a] are the cross-sum corrections applied when sliding a -> a+1
//   S11[a] = within(a) + within(a+G) - 2 cross(a)
struct Sums {
  std::vector<double> F, B, V1, V2, V3, V4, S11;
};

template <class Gram>
Sums compute_sums(const Gram& g, long n, long G, long lag) {
  const long w = G - lag;
  const long nk = n - 2 * G + 1;
  const long nj = n - G + 1;
  Sums s;
  s.F.resize(static_cast<std::size_t>(nj - 1));
  s.B.resize(static_cast<std::size_t>(nj - 1));
  s.V1.resize(static_cast<std::size_t>(nk - 1));
  s.V2.resize(s.V1.size());
  s.V3.resize(s.V1.size());
  s.V4.resize(s.V1.size());
  s.S11.resize(static_cast<std::size_t>(nk));

  CompensatedSum within;
  CompensatedSum cross;
  for (long i = 0; i < w; ++i) {
    auto row = g.row(static_cast<std::size_t>(i));
    double a = 0.0, c = 0.0;
    for (long j = 0; j < w; ++j) {
      a += row[j - i];
      c += row[G + j - i];
    }
    within.add(a);
    cross.add(c);
  }

  std::vector<double> W(static_cast<std::size_t>(nj));
  W[0] = within.value();
  for (long j = 0; j + 1 < nj; ++j) {
    auto out = g.row(static_cast<std::size_t>(j));
    auto in = g.row(static_cast<std::size_t>(j + w));
    double f = 0.0, b = 0.0;
    for (long t = 0; t < w; ++t) f += out[t];
    for (long t = 1; t <= w; ++t) b += in[t - w];
    s.F[static_cast<std::size_t>(j)] = f;
    s.B[static_cast<std::size_t>(j)] = b;
    within.add(-2.0 * f + out[0]);
    within.add(2.0 * b - in[0]);
    W[static_cast<std::size_t>(j + 1)] = within.value();
  }

  for (long a = 0; a < nk; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    s.S11[ua] = W[ua] + W[ua + static_cast<std::size_t>(G)] - 2.0 * cross.value();
    if (a + 1 == nk) break;
    auto r0 = g.row(ua);
    auto rw = g.row(static_cast<std::size_t>(a + w));
    auto rG = g.row(static_cast<std::size_t>(a + G));
    auto rGw = g.row(static_cast<std::size_t>(a + G + w));
    double v1 = 0.0, v2 = 0.0, v3 = 0.0, v4 = 0.0;
    for (long t = 0; t < w; ++t) {
      v1 += r0[G + t];
      v2 += rw[G - w + t];
    }
    for (long i = 1; i <= w; ++i) {
      v3 += rG[i - G];
      v4 += rGw[i - G - w];
    }
    s.V1[ua] = v1;
    s.V2[ua] = v2;
    s.V3[ua] = v3;
    s.V4[ua] = v4;
    cross.add(v2 - v1);
    cross.add(v4 - v3);
  }
  return s;
}

inline constexpr int kLanes = 8;

// Bootstrap maxima for kLanes replicates at once. wts holds the multipliers
// lane-interleaved: wts[t * kLanes + l] is W_{t+1} of lane l, t < n - G.
template <class Gram>
void replicate_batch(const Gram& g, const Sums& S, long n, long G, long lag, double sign, const double* wts,
                     double* out) {
  constexpr int L = kLanes;
  const long w = G - lag;
  const long nk = n - 2 * G + 1;
  const double inv_w = 1.0 / static_cast<double>(w);
  const double norm = 1.0 / (static_cast<double>(w) * static_cast<double>(w));

  CompensatedSum LLq[L], LL1[L], RRq[L], RR1[L], X[L], XL1[L], XR1[L], msum[L];

  for (long i = 0; i < w; ++i) {
    auto rl = g.row(static_cast<std::size_t>(i));
    auto rr = g.row(static_cast<std::size_t>(G + i));
    double aLL[L] = {}, aRR[L] = {}, aX[L] = {};
    double uLL = 0.0, uRR = 0.0, uX = 0.0;
    for (long j = 0; j < w; ++j) {
      const double hl = rl[j - i], hr = rr[j - i], hx = rl[G + j - i];
      uLL += hl;
      uRR += hr;
      uX += hx;
      const double* wj = wts + j * L;
      for (int l = 0; l < L; ++l) {
        aLL[l] += wj[l] * hl;
        aRR[l] += wj[l] * hr;
        aX[l] += wj[l] * hx;
      }
    }
    const double* wi = wts + i * L;
    for (int l = 0; l < L; ++l) {
      LLq[l].add(wi[l] * aLL[l]);
      LL1[l].add(wi[l] * uLL);
      RRq[l].add(wi[l] * aRR[l]);
      RR1[l].add(wi[l] * uRR);
      X[l].add(wi[l] * aX[l]);
      XL1[l].add(wi[l] * uX);
      XR1[l].add(aX[l]);
      msum[l].add(wi[l]);
    }
  }

  // Count of adjacent unequal multipliers inside the current window, per lane:
  // zero means the centred weights vanish and the statistic is exactly 0.
  int breaks[L] = {};
  for (long j = 0; j + 1 < w; ++j)
    for (int l = 0; l < L; ++l) breaks[l] += wts[j * L + l] != wts[(j + 1) * L + l];

  double best[L];
  for (int l = 0; l < L; ++l) best[l] = -std::numeric_limits<double>::infinity();

  for (long a = 0; a < nk; ++a) {
    const double s11 = S.S11[static_cast<std::size_t>(a)];
    for (int l = 0; l < L; ++l) {
      double t = 0.0;
      if (breaks[l] != 0) {
        const double mu = msum[l].value() * inv_w;
        const double sww = LLq[l].value() + RRq[l].value() - 2.0 * X[l].value();
        const double sw1 = LL1[l].value() + RR1[l].value() - XL1[l].value() - XR1[l].value();
        t = sign * (sww - 2.0 * mu * sw1 + mu * mu * s11) * norm;
      }
      if (t > best[l]) best[l] = t;
    }
    if (a + 1 == nk) break;

    auto r0 = g.row(static_cast<std::size_t>(a));
    auto rw = g.row(static_cast<std::size_t>(a + w));
    auto rG = g.row(static_cast<std::size_t>(a + G));
    auto rGw = g.row(static_cast<std::size_t>(a + G + w));
    const double* wa = wts + a * L;

    double Fw[L] = {}, P1[L] = {}, P2[L] = {}, FwR[L] = {};
    for (long j = 0; j < w; ++j) {
      const double h0 = r0[j], h1 = r0[G + j], h2 = rw[G - w + j], h3 = rG[j];
      const double* wj = wa + j * L;
      for (int l = 0; l < L; ++l) {
        Fw[l] += wj[l] * h0;
        P1[l] += wj[l] * h1;
        P2[l] += wj[l] * h2;
        FwR[l] += wj[l] * h3;
      }
    }
    double Bw[L] = {}, BwR[L] = {}, P3[L] = {}, P4[L] = {};
    for (long j = 1; j <= w; ++j) {
      const double h0 = rw[j - w], h1 = rGw[j - w], h2 = rG[j - G], h3 = rGw[j - G - w];
      const double* wj = wa + j * L;
      for (int l = 0; l < L; ++l) {
        Bw[l] += wj[l] * h0;
        BwR[l] += wj[l] * h1;
        P3[l] += wj[l] * h2;
        P4[l] += wj[l] * h3;
      }
    }

    const auto ua = static_cast<std::size_t>(a);
    const double d0 = r0[0], dw = rw[0], dG = rG[0], dGw = rGw[0];
    const double Fa = S.F[ua], Bb = S.B[ua], FaG = S.F[ua + static_cast<std::size_t>(G)],
                 BbG = S.B[ua + static_cast<std::size_t>(G)];
    const double v1 = S.V1[ua], v2 = S.V2[ua], v3 = S.V3[ua], v4 = S.V4[ua];
    const double* wb = wts + (a + w) * L;
    const double* wn = wts + (a + w - 1) * L;  // last multiplier of the old window
    for (int l = 0; l < L; ++l) {
      const double oa = wa[l], ob = wb[l];
      LLq[l].add(-oa * (2.0 * Fw[l] - oa * d0));
      LLq[l].add(ob * (2.0 * Bw[l] - ob * dw));
      LL1[l].add(-(oa * Fa + Fw[l] - oa * d0));
      LL1[l].add(ob * Bb + Bw[l] - ob * dw);
      RRq[l].add(-oa * (2.0 * FwR[l] - oa * dG));
      RRq[l].add(ob * (2.0 * BwR[l] - ob * dGw));
      RR1[l].add(-(oa * FaG + FwR[l] - oa * dG));
      RR1[l].add(ob * BbG + BwR[l] - ob * dGw);
      X[l].add(-oa * P1[l] + ob * P2[l]);
      X[l].add(-oa * P3[l] + ob * P4[l]);
      XL1[l].add(-oa * v1 + ob * v2);
      XL1[l].add(P4[l] - P3[l]);
      XR1[l].add(P2[l] - P1[l]);
      XR1[l].add(-oa * v3 + ob * v4);
      msum[l].add(-oa);
      msum[l].add(ob);
      breaks[l] += (wn[l] != ob) - (oa != wa[L + l]);
    }
  }
  for (int l = 0; l < L; ++l) out[l] = best[l];
}

}  // namespace npmojo::detail
