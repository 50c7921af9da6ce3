#include "npmojo/simulate.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <random>
#include <tuple>

#include "npmojo/errors.hpp"
#include "npmojo/rng.hpp"

namespace npmojo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Law = InnovationLaw;

MatrixXd to_eigen(const Matrix& m, std::size_t p, const char* what) {
  if (m.size() != p) throw ConfigError(std::string(what) + " must be " + std::to_string(p) + "x" + std::to_string(p));
  MatrixXd out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    if (m[i].size() != p) throw ConfigError(std::string(what) + " is not square");
    for (std::size_t j = 0; j < p; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
  }
  return out;
}

// Roots found numerically on the unit circle come out a few ulps inside it.
constexpr double kUnitCircle = 1.0 - 1e-10;

double spectral_radius(const std::vector<MatrixXd>& ar) {
  if (ar.empty()) return 0.0;
  const Eigen::Index p = ar[0].rows();
  const Eigen::Index k = static_cast<Eigen::Index>(ar.size());
  MatrixXd comp = MatrixXd::Zero(p * k, p * k);
  for (Eigen::Index i = 0; i < k; ++i) comp.block(0, i * p, p, p) = ar[static_cast<std::size_t>(i)];
  if (k > 1) comp.block(p, 0, p * (k - 1), p * (k - 1)).setIdentity();
  Eigen::EigenSolver<MatrixXd> es(comp, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct Compiled {
  std::vector<Law> laws;  // one per coordinate
  std::optional<MatrixXd> mix;
  std::vector<MatrixXd> ar;
  std::vector<MatrixXd> ma;
  std::optional<GarchParams> garch;
  VectorXd mean;
};

void check_law(const Law& law) {
  switch (law.kind) {
    case Law::Kind::Gaussian: break;
    case Law::Kind::StudentT:
    case Law::Kind::ChiSquared:
      if (!(law.param > 0.0)) throw ConfigError("degrees of freedom must be positive");
      break;
    case Law::Kind::Exponential:
      if (!(law.param > 0.0)) throw ConfigError("exponential rate must be positive");
      break;
    case Law::Kind::Bernoulli:
      if (!(law.param >= 0.0 && law.param <= 1.0)) throw ConfigError("Bernoulli probability must lie in [0, 1]");
      break;
  }
  if (!std::isfinite(law.shift) || !std::isfinite(law.scale)) throw ConfigError("innovation shift/scale not finite");
}

Compiled compile(const SegmentProcess& s, std::size_t p) {
  Compiled c;
  if (s.laws.size() == 1)
    c.laws.assign(p, s.laws[0]);
  else if (s.laws.size() == p)
    c.laws = s.laws;
  else
    throw ConfigError("segment needs one innovation law or one per coordinate");
  for (const auto& law : c.laws) check_law(law);
  if (!s.mix.empty()) c.mix = to_eigen(s.mix, p, "mixing matrix");
  for (const auto& a : s.ar) c.ar.push_back(to_eigen(a, p, "AR coefficient"));
  for (const auto& b : s.ma) c.ma.push_back(to_eigen(b, p, "MA coefficient"));
  if (s.garch) {
    if (!c.ar.empty() || !c.ma.empty()) throw ConfigError("GARCH segments cannot carry ARMA terms");
    const auto& g = *s.garch;
    if (!(g.omega > 0.0 && g.alpha >= 0.0 && g.beta >= 0.0 && g.alpha + g.beta < 1.0))
      throw ConfigError("GARCH parameters must satisfy omega > 0, alpha, beta >= 0, alpha + beta < 1");
    c.garch = g;
  }
  if (spectral_radius(c.ar) >= kUnitCircle) throw ConfigError("nonstationary AR parameters (characteristic root |z| <= 1)");
  c.mean = VectorXd::Zero(static_cast<Eigen::Index>(p));
  if (s.mean.size() == 1)
    c.mean.setConstant(s.mean[0]);
  else if (s.mean.size() == p)
    for (std::size_t i = 0; i < p; ++i) c.mean(static_cast<Eigen::Index>(i)) = s.mean[i];
  else if (!s.mean.empty())
    throw ConfigError("segment mean must have 1 or p entries");
  return c;
}

// Raw draws shared by every segment using the same base law on the same coordinate.
class InnovationPool {
 public:
  InnovationPool(std::uint64_t seed, std::size_t len) : seed_(seed), len_(len) {}

  const std::vector<double>& raw(const Law& law, std::size_t coord) {
    auto key = std::make_tuple(static_cast<int>(law.kind), std::bit_cast<std::uint64_t>(law.param), coord);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto gen = keyed_stream(seed_, {static_cast<std::uint64_t>(StreamTag::Simulation),
                                    static_cast<std::uint64_t>(law.kind), std::get<1>(key), coord});
    std::vector<double> v(len_);
    switch (law.kind) {
      case Law::Kind::Gaussian: {
        std::normal_distribution<double> d;
        for (auto& x : v) x = d(gen);
        break;
      }
      case Law::Kind::StudentT: {
        std::student_t_distribution<double> d(law.param);
        for (auto& x : v) x = d(gen);
        break;
      }
      case Law::Kind::ChiSquared: {
        std::chi_squared_distribution<double> d(law.param);
        for (auto& x : v) x = d(gen);
        break;
      }
      case Law::Kind::Exponential: {
        std::exponential_distribution<double> d(law.param);
        for (auto& x : v) x = d(gen);
        break;
      }
      case Law::Kind::Bernoulli: {
        std::bernoulli_distribution d(law.param);
        for (auto& x : v) x = d(gen) ? 1.0 : 0.0;
        break;
      }
    }
    return cache_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::uint64_t seed_;
  std::size_t len_;
  std::map<std::tuple<int, std::uint64_t, std::size_t>, std::vector<double>> cache_;
};

VectorXd innovation(const Compiled& seg, InnovationPool& pool, std::size_t tau) {
  const std::size_t p = seg.laws.size();
  VectorXd e(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    const auto& law = seg.laws[i];
    e(static_cast<Eigen::Index>(i)) = law.shift + law.scale * pool.raw(law, i)[tau];
  }
  if (seg.mix) e = (*seg.mix) * e;
  return e;
}

struct RecursionState {
  std::deque<VectorXd> x_hist;  // most recent first
  std::deque<VectorXd> e_hist;
  std::optional<VectorXd> sigma2;
  VectorXd x_prev;
};

VectorXd step(const Compiled& seg, RecursionState& st, const VectorXd& e) {
  const Eigen::Index p = e.size();
  VectorXd x;
  if (seg.garch) {
    const auto& g = *seg.garch;
    if (!st.sigma2) st.sigma2 = VectorXd::Constant(p, g.omega / (1.0 - g.alpha - g.beta));
    if (st.x_prev.size() != p) st.x_prev = VectorXd::Zero(p);
    VectorXd s2 = (g.omega + g.alpha * st.x_prev.array().square() + g.beta * st.sigma2->array()).matrix();
    x = (s2.array().sqrt() * e.array()).matrix();
    st.sigma2 = s2;
  } else {
    x = e;
    for (std::size_t i = 0; i < seg.ar.size() && i < st.x_hist.size(); ++i) x += seg.ar[i] * st.x_hist[i];
    for (std::size_t i = 0; i < seg.ma.size() && i < st.e_hist.size(); ++i) x += seg.ma[i] * st.e_hist[i];
    if (st.sigma2) st.sigma2.reset();
  }
  st.x_prev = x;
  st.x_hist.push_front(x);
  st.e_hist.push_front(e);
  constexpr std::size_t kKeep = 16;
  if (st.x_hist.size() > kKeep) st.x_hist.pop_back();
  if (st.e_hist.size() > kKeep) st.e_hist.pop_back();
  return x;
}

}  // namespace

void check_stationary(const std::vector<Matrix>& ar) {
  if (ar.empty()) return;
  std::vector<MatrixXd> m;
  for (const auto& a : ar) m.push_back(to_eigen(a, a.size(), "AR coefficient"));
  if (spectral_radius(m) >= kUnitCircle) throw ConfigError("nonstationary AR parameters (characteristic root |z| <= 1)");
}

LabeledSeries generate_custom(const CustomSpec& spec, std::uint64_t seed) {
  if (spec.n < 10) throw ConfigError("series length must be >= 10");
  if (spec.p < 1) throw ConfigError("dimension must be >= 1");
  if (spec.burn_in < 0) throw ConfigError("burn-in must be >= 0");
  if (spec.segments.size() != spec.changes.size() + 1)
    throw ConfigError("need exactly one segment process per segment");
  Segmentation truth(spec.n, spec.changes);

  std::vector<Compiled> segs;
  for (const auto& s : spec.segments) segs.push_back(compile(s, spec.p));

  const std::size_t burn = static_cast<std::size_t>(spec.burn_in);
  InnovationPool pool(seed, burn + spec.n);
  TimeSeries ts(spec.n, spec.p);
  // Segment j covers times (bounds[j], bounds[j+1]]; time t sits at pool index burn + t - 1.
  std::vector<std::size_t> bounds{0};
  for (int c : spec.changes) bounds.push_back(static_cast<std::size_t>(c));
  bounds.push_back(spec.n);

  auto emit = [&](const Compiled& seg, std::size_t t, const VectorXd& x) {
    for (std::size_t i = 0; i < spec.p; ++i) ts(t - 1, i) = x(static_cast<Eigen::Index>(i)) + seg.mean(static_cast<Eigen::Index>(i));
  };

  if (spec.coupling == Coupling::Shared) {
    for (std::size_t j = 0; j < segs.size(); ++j) {
      RecursionState st;
      const std::size_t first = burn + bounds[j];      // pool index of the segment's first time point
      const std::size_t last = burn + bounds[j + 1];   // one past the end
      for (std::size_t tau = first - burn; tau < last; ++tau) {
        VectorXd x = step(segs[j], st, innovation(segs[j], pool, tau));
        if (tau >= first) emit(segs[j], tau - burn + 1, x);
      }
    }
  } else {
    RecursionState st;
    std::size_t j = 0;
    for (std::size_t tau = 0; tau < burn + spec.n; ++tau) {
      const std::size_t t = tau + 1 > burn ? tau + 1 - burn : 0;  // 0 during burn-in
      while (t > bounds[j + 1]) ++j;
      VectorXd x = step(segs[j], st, innovation(segs[j], pool, tau));
      if (t >= 1) emit(segs[j], t, x);
    }
  }
  return LabeledSeries{std::move(ts), std::move(truth), {}, "CUSTOM"};
}

namespace {

Law gaussian(double scale = 1.0, double shift = 0.0) { return {Law::Kind::Gaussian, 0.0, shift, scale}; }
Law student(double df, double scale = 1.0) { return {Law::Kind::StudentT, df, 0.0, scale}; }

Matrix scalar(double a) { return {{a}}; }
Matrix mat2(double a, double b, double c, double d) { return {{a, b}, {c, d}}; }
Matrix identity(std::size_t p) {
  Matrix m(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) m[i][i] = 1.0;
  return m;
}
// s * r^{|i-j|}
Matrix toeplitz_power(std::size_t p, double r, double s = 1.0) {
  Matrix m(p, std::vector<double>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m[i][j] = s * std::pow(r, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  return m;
}
Matrix diag_offdiag(std::size_t p, double diag, double off) {
  Matrix m(p, std::vector<double>(p, off));
  for (std::size_t i = 0; i < p; ++i) m[i][i] = diag;
  return m;
}
Matrix symmetric_sqrt(const Matrix& sigma) {
  MatrixXd s = to_eigen(sigma, sigma.size(), "covariance");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  if (es.eigenvalues().minCoeff() < 0.0) throw ConfigError("covariance matrix is not positive semidefinite");
  MatrixXd r = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  Matrix out(sigma.size(), std::vector<double>(sigma.size()));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = 0; j < sigma.size(); ++j)
      out[i][j] = r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

SegmentProcess iid(Law law, std::vector<double> mean = {}) {
  SegmentProcess s;
  s.laws = {law};
  s.mean = std::move(mean);
  return s;
}
SegmentProcess ar(std::vector<double> coefs, Law law = gaussian(), std::vector<double> mean = {}) {
  SegmentProcess s = iid(law, std::move(mean));
  for (double a : coefs) s.ar.push_back(scalar(a));
  return s;
}
SegmentProcess ma(std::vector<double> coefs, Law law = gaussian(), std::vector<double> mean = {}) {
  SegmentProcess s = iid(law, std::move(mean));
  for (double b : coefs) s.ma.push_back(scalar(b));
  return s;
}
SegmentProcess var1(Matrix A) {
  SegmentProcess s;
  s.ar = {std::move(A)};
  return s;
}
SegmentProcess vma1(Matrix B, std::vector<double> mean = {}) {
  SegmentProcess s;
  s.ma = {std::move(B)};
  s.mean = std::move(mean);
  return s;
}
SegmentProcess mixed(Matrix sigma, Law law = gaussian()) {
  SegmentProcess s = iid(law);
  s.mix = symmetric_sqrt(sigma);
  return s;
}
SegmentProcess garch(double omega, double alpha, double beta) {
  SegmentProcess s;
  s.garch = GarchParams{omega, alpha, beta};
  return s;
}

struct CatalogEntry {
  std::size_t n;
  std::size_t p;
  std::vector<int> changes;
  std::vector<SegmentProcess> segments;
  Coupling coupling = Coupling::Shared;
  std::map<int, std::vector<int>> detectable{};
};

// Mean-shift model: one noise process, segment means mu.
std::vector<SegmentProcess> with_means(const SegmentProcess& noise, const std::vector<std::vector<double>>& mu) {
  std::vector<SegmentProcess> out;
  for (const auto& m : mu) {
    SegmentProcess s = noise;
    s.mean = m;
    out.push_back(s);
  }
  return out;
}

std::vector<std::vector<double>> scalars(std::initializer_list<double> v) {
  std::vector<std::vector<double>> out;
  for (double x : v) out.push_back({x});
  return out;
}

CatalogEntry catalog_entry(const std::string& id, const std::map<std::string, double>& overrides) {
  const std::vector<int> abc{250, 500, 750};
  const std::vector<int> cd{333, 667};
  const double t5 = 1.0 / std::sqrt(5.0 / 3.0);
  const double t25 = 1.0 / std::sqrt(5.0);

  if (id == "N1") return {1000, 1, {}, {iid(gaussian())}};
  if (id == "N2") return {1000, 1, {}, {iid(student(5))}};
  if (id == "N3") return {1000, 1, {}, {ar({0.7})}};
  if (id == "N4") return {1000, 1, {}, {ma({0.9, 0.8, 0.7, 0.6})}};
  if (id == "N5") return {1000, 1, {}, {garch(0.5, 0.4, 0.0)}};
  if (id == "N6") return {1000, 2, {}, {var1(mat2(0.4, -0.2, -0.2, 0.4))}};
  if (id == "N7") {
    auto it = overrides.find("n7_scale");
    const double s = it == overrides.end() ? 0.3 : it->second;
    return {1000, 5, {}, {var1(toeplitz_power(5, 0.3, s))}};
  }

  const auto mu_abc = scalars({0, 1, 0, 1});
  if (id == "A1") return {1000, 1, abc, with_means(iid(gaussian()), mu_abc)};
  if (id == "A2") return {1000, 1, abc, with_means(iid(student(5, t5)), mu_abc)};
  if (id == "A3") return {1000, 1, abc, with_means(ar({0.7}, gaussian(std::sqrt(0.51))), mu_abc)};
  if (id == "A4") return {1000, 1, abc, with_means(ma({0.9, 0.8, 0.7, 0.6}, gaussian(1.0 / std::sqrt(3.3))), mu_abc)};
  if (id == "A5") {
    std::vector<double> zero(10, 0.0), delta(10, 0.0);
    std::fill(delta.begin(), delta.begin() + 5, 0.5);
    return {1000, 10, abc, with_means(iid(gaussian()), {zero, delta, zero, delta})};
  }

  if (id == "B1" || id == "B2") {
    const Law base = id == "B1" ? gaussian() : student(5, t5);
    std::vector<SegmentProcess> segs;
    for (double sigma : {0.5, 1.0, 0.5, 1.0}) {
      Law l = base;
      l.scale *= sigma;
      segs.push_back(iid(l));
    }
    return {1000, 1, abc, segs};
  }
  if (id == "B3") {
    std::vector<SegmentProcess> segs;
    for (double sigma : {1.0, 2.0, 1.0, 2.0}) segs.push_back(ar({0.4}, gaussian(sigma)));
    return {1000, 1, abc, segs, Coupling::Continue};
  }
  if (id == "B4" || id == "B5") {
    const Law law = id == "B4" ? gaussian() : student(5);
    auto a = mixed(identity(2), law), b = mixed(mat2(1, 0.9, 0.9, 1), law);
    return {1000, 2, abc, {a, b, a, b}};
  }
  if (id == "B6") {
    auto a = mixed(identity(5)), b = mixed(toeplitz_power(5, 0.7));
    return {1000, 5, abc, {a, b, a, b}};
  }

  if (id == "C1")
    return {1000, 1, cd, {ar({-0.8}), ar({0.8}), ar({-0.8})}, Coupling::Shared, {{0, {}}, {1, {1, 2}}, {2, {}}}};
  if (id == "C2")
    return {1000, 1, cd, {ma({0.0, -0.7}), ma({0.0, 0.7}), ma({0.0, -0.7})}, Coupling::Shared,
            {{0, {}}, {1, {}}, {2, {1, 2}}}};
  if (id == "C3") return {1000, 1, {500}, {garch(0.01, 0.7, 0.2), garch(0.01, 0.2, 0.7)}};
  if (id == "C4") {
    auto a = var1(mat2(0.5, 0.1, 0.1, 0.5)), b = var1(mat2(-0.5, 0.1, 0.1, -0.5));
    return {1000, 2, cd, {a, b, a}, Coupling::Shared, {{0, {}}, {1, {1, 2}}, {2, {}}}};
  }
  if (id == "C5") {
    auto a = vma1(mat2(1, 0.1, 0.1, 1)), b = vma1(mat2(-1, 0.1, 0.1, -1));
    return {1000, 2, cd, {a, b, a}, Coupling::Shared, {{0, {}}, {1, {1, 2}}, {2, {}}}};
  }
  if (id == "C6") {
    auto a = vma1(diag_offdiag(5, 1, 0.1)), b = vma1(diag_offdiag(5, -1, 0.1));
    return {1000, 5, cd, {a, b, a}, Coupling::Shared, {{0, {}}, {1, {1, 2}}, {2, {}}}};
  }

  if (id == "D1") {
    auto a = iid(gaussian()), b = iid(student(2.5, t25));
    return {1000, 1, cd, {a, b, a}};
  }
  if (id == "D2") {
    const double k = 1.0 / (2.0 * std::sqrt(2.0));
    auto a = iid({Law::Kind::ChiSquared, 1.0, 0.5 - k, k}), b = iid(gaussian(0.5, 0.5));
    return {1000, 1, cd, {a, b, a}};
  }
  if (id == "D3") {
    auto a = ar({0.4}, gaussian(0.5)), b = ar({0.4}, Law{Law::Kind::Exponential, 2.0, -0.5, 1.0});
    return {1000, 1, cd, {a, b, a}, Coupling::Continue};
  }
  if (id == "D4") {
    auto a = iid(gaussian());
    SegmentProcess b;
    b.laws.assign(3, gaussian());
    b.laws.resize(10, student(2.5, t25));
    return {1000, 10, cd, {a, b, a}};
  }

  const SegmentProcess ar03 = ar({0.3}, gaussian(std::sqrt(1.0 - 0.09)));
  if (id == "M1") return {1000, 1, {80, 250, 600}, with_means(ar03, scalars({0, 1.6, 0.6, 1.2}))};
  if (id == "M2") return {1000, 1, {500, 900}, {ar({0.3}), ar({0.8}), ar({-0.8})}};
  if (id == "M3") {
    auto a = vma1(mat2(1, 0.1, 0.1, 1), {0.0}), b = vma1(mat2(1, 0.1, 0.1, 1), {0.7}),
         c = vma1(mat2(-1, 0.1, 0.1, -1), {0.7});
    return {1000, 2, {150, 500}, {a, b, c}};
  }
  if (id == "M4")
    return {2000, 1, {500, 1000, 1150, 1550, 1900}, with_means(ar03, scalars({0, 0.9, 2.2, 1.1, 0, 1.5}))};
  if (id == "M5") {
    // Mean changes at 100, 200, 600, 1400; AR changes at 1000, 1800.
    return {2000,
            1,
            {100, 200, 600, 1000, 1400, 1800},
            {ar({-0.7}, gaussian(), {0.0}), ar({-0.7}, gaussian(), {1.5}), ar({-0.7}, gaussian(), {0.0}),
             ar({-0.7}, gaussian(), {0.9}), ar({0.7}, gaussian(), {0.9}), ar({0.7}, gaussian(), {-0.3}),
             ar({-0.8}, gaussian(), {-0.3})}};
  }
  if (id == "M6") {
    auto s = [](double r) { return mixed(mat2(1, r, r, 1)); };
    return {2000, 2, {150, 300, 800, 1300, 1600}, {mixed(identity(2)), s(0.6), s(-0.6), s(0.6), s(-0.2), s(0.6)}};
  }
  if (id == "M7")
    return {10000, 1, {1000, 2000, 2150, 2800, 3650, 4650, 5150, 5550},
            with_means(iid(gaussian()), scalars({0, 1, 2.6, 1.1, 0, 1, -0.2, 1, 0}))};
  if (id == "M8") {
    const double a[] = {0.8, -0.8, 0.8, -0.2, -0.2, -0.2};
    const double b[] = {-0.2, -0.2, -0.2, 0.6, -0.6, 0.6};
    std::vector<SegmentProcess> segs;
    for (int j = 0; j < 6; ++j) segs.push_back(ar({a[j], b[j]}));
    return {10000, 1, {1000, 1400, 5000, 9000, 9400}, segs};
  }
  if (id == "M9") {
    auto b0 = vma1(mat2(-1, 0.4, 0.5, -1)), b1 = vma1(mat2(1, 0.4, 0.4, 1)), b4 = vma1(mat2(1.8, 0.1, 0.1, 1.8));
    return {10000, 2, {600, 2000, 4000, 5300, 5600, 8000}, {b0, b1, b0, b1, b4, b1, b0}, Coupling::Shared,
            {{1, {1, 2, 3, 4, 5, 6}}}};
  }
  if (id == "EXAMPLE1") {
    const Law w = gaussian(std::sqrt(0.75));
    return {1000, 1, {300, 650}, {ar({0.5}, w, {0.0}), ar({0.5}, w, {0.7}), ar({-0.5}, w, {0.7})},
            Coupling::Shared, {{0, {1}}, {1, {1, 2}}}};
  }
  throw ConfigError("unknown scenario '" + id + "'");
}

CatalogEntry checked_entry(const std::string& id, const std::map<std::string, double>& overrides) {
  for (const auto& [key, value] : overrides)
    if (key != "burn_in" && key != "n7_scale") throw ConfigError("unknown scenario override '" + key + "'");
  if (overrides.count("n7_scale") && id != "N7") throw ConfigError("override n7_scale only applies to N7");
  return catalog_entry(id, overrides);
}

std::vector<int> scale_changes(const std::vector<int>& catalog, std::size_t n_catalog, std::size_t n) {
  if (n == n_catalog) return catalog;
  std::vector<int> out;
  for (int c : catalog)
    out.push_back(static_cast<int>((static_cast<long long>(c) * static_cast<long long>(n)) /
                                   static_cast<long long>(n_catalog)));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] < 1 || static_cast<std::size_t>(out[i]) >= n || (i > 0 && out[i] <= out[i - 1]))
      throw ConfigError("series length " + std::to_string(n) + " is too short for this scenario's change points");
  return out;
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "N1", "N2", "N3", "N4", "N5", "N6", "N7", "A1", "A2", "A3", "A4", "A5", "B1", "B2", "B3", "B4", "B5",
      "B6", "C1", "C2", "C3", "C4", "C5", "C6", "D1", "D2", "D3", "D4", "M1", "M2", "M3", "M4", "M5", "M6",
      "M7", "M8", "M9", "EXAMPLE1"};
  return ids;
}

std::size_t catalog_length(const std::string& id) { return catalog_entry(id, {}).n; }

std::vector<int> catalog_changes(const std::string& id) { return catalog_entry(id, {}).changes; }

CustomSpec scenario_definition(const std::string& id, std::size_t n, const std::map<std::string, double>& overrides) {
  CatalogEntry e = checked_entry(id, overrides);
  CustomSpec spec;
  spec.n = n == 0 ? e.n : n;
  if (spec.n < 10) throw ConfigError("series length must be >= 10");
  spec.p = e.p;
  spec.changes = scale_changes(e.changes, e.n, spec.n);
  spec.segments = std::move(e.segments);
  spec.coupling = e.coupling;
  if (auto it = overrides.find("burn_in"); it != overrides.end()) {
    if (!(it->second >= 0.0) || it->second != std::floor(it->second)) throw ConfigError("burn_in must be a non-negative integer");
    spec.burn_in = static_cast<int>(it->second);
  }
  return spec;
}

LabeledSeries generate(const ScenarioSpec& spec) {
  CustomSpec custom = scenario_definition(spec.id, spec.n, spec.overrides);
  LabeledSeries out = generate_custom(custom, spec.seed);
  out.scenario = spec.id;
  out.detectable_lags = checked_entry(spec.id, spec.overrides).detectable;
  return out;
}

}  // namespace npmojo
