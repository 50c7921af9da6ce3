#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "npmojo/errors.hpp"
#include "npmojo/pipeline.hpp"
#include "npmojo/segment.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace npmojo;
using npmojo::testing::uniform_int;
using npmojo::testing::uniform_real;

using npmojo::testing::locations;
using npmojo::testing::make_profile;
using npmojo::testing::random_candidates;
using npmojo::testing::random_profile;

TEST_CASE("merge parameter validation") {
  MergeParams p;
  CHECK_NOTHROW(p.validate());
  p.eta = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.c = 2.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.big_c = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("segmentation validation") {
  CHECK_NOTHROW(Segmentation(10, {1, 9}));
  CHECK_THROWS_AS(Segmentation(10, {0}), ConfigError);
  CHECK_THROWS_AS(Segmentation(10, {10}), ConfigError);
  CHECK_THROWS_AS(Segmentation(10, {5, 5}), ConfigError);
  CHECK_THROWS_AS(Segmentation(10, {6, 5}), ConfigError);
}

TEST_CASE("locate_changes examples") {
  MergeParams params;
  SUBCASE("flat zero profile") {
    CHECK(locate_changes(make_profile(std::vector<double>(200, 0.0), 100), 0.1, params).empty());
  }
  SUBCASE("triangular bump") {
    std::vector<double> v(300);
    for (int i = 0; i < 300; ++i) v[i] = std::max(0.0, 1.0 - std::abs(i - 140) / 30.0);
    auto out = locate_changes(make_profile(v, 100), 0.2, params);
    REQUIRE(out.size() == 1);
    CHECK(out[0].location == 100 + 140);
    CHECK(out[0].stat == 1.0);
    CHECK(out[0].score == 0.0);
    CHECK(out[0].bandwidth == 100);
  }
  SUBCASE("short exceedance run is ignored") {
    // G = 100: runs must be longer than floor(0.02 * 100) = 2.
    std::vector<double> v(300, 0.0);
    v[50] = 1.0;
    v[51] = 0.5;
    v[200] = 1.0;
    v[201] = 0.9;
    v[202] = 0.8;
    auto out = locate_changes(make_profile(v, 100), 0.1, params);
    REQUIRE(out.size() == 1);
    CHECK(out[0].location == 300);
  }
  SUBCASE("plateau resolves to its first index") {
    std::vector<double> v(100, 0.0);
    for (int i = 40; i < 50; ++i) v[i] = 1.0;
    auto out = locate_changes(make_profile(v, 50), 0.5, params);
    REQUIRE(out.size() == 1);
    CHECK(out[0].location == 50 + 40);
  }
}

TEST_CASE("locate_changes matches the reference selector") {
  std::mt19937_64 gen(1001);
  for (int it = 0; it < 500; ++it) {
    const int G = uniform_int(gen, 2, 200);
    const int N = uniform_int(gen, 1, 600);
    auto prof = make_profile(random_profile(gen, N), G, uniform_int(gen, 0, 1));
    MergeParams params;
    params.eta = uniform_real(gen, 0.05, 0.95);
    params.min_exceed_frac = gen() % 2 ? 0.02 : uniform_real(gen, 0.0, 0.2);
    const double threshold = it % 10 == 0 ? uniform_real(gen, -0.1, 0.0) : uniform_real(gen, 0.01, 0.8);
    auto got = locate_changes(prof, threshold, params);
    CHECK(locations(got) == oracle::locate(prof, threshold, params.eta, params.min_exceed_frac));
    const int radius = floor_fraction(params.eta, G);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i].location - got[i - 1].location > radius);
    for (const auto& e : got) CHECK(e.stat > threshold);
  }
}

TEST_CASE("multi_lag_merge examples") {
  MergeParams params;
  ChangePointEstimate a{300, 0, 0.5, 0.9, 166}, b{310, 1, 0.4, 0.95, 166};
  auto out = multi_lag_merge({{a}, {b}}, 166, params);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == b);

  std::vector<ChangePointEstimate> single{{200, 0, 0.3, 0.7, 100}, {290, 0, 0.2, 0.8, 100}, {500, 0, 0.9, 1.0, 100}};
  // One lag passes through unchanged when its estimates are at least cG apart.
  params.c = 0.5;
  CHECK(multi_lag_merge({single}, 100, params) == single);

  SUBCASE("statistic mode") {
    MergeParams p;
    auto s = multi_lag_merge({{a}, {b}}, 166, p, SelectBy::Statistic);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == a);
  }
  SUBCASE("ties") {
    ChangePointEstimate x{400, 0, 0.5, 1.0, 100}, y{420, 1, 0.5, 1.0, 100}, z{410, 2, 0.6, 1.0, 100};
    auto t = multi_lag_merge({{x}, {y}, {z}}, 100, MergeParams{});
    REQUIRE(t.size() == 1);
    CHECK(t[0] == z);
    auto u = multi_lag_merge({{y}, {x}}, 100, MergeParams{});
    REQUIRE(u.size() == 1);
    CHECK(u[0] == x);
  }
}

TEST_CASE("multi_lag_merge matches the reference merge") {
  std::mt19937_64 gen(2002);
  for (int it = 0; it < 500; ++it) {
    const int G = uniform_int(gen, 20, 200);
    auto cands = random_candidates(gen, G);
    MergeParams params;
    params.c = uniform_real(gen, 0.1, 2.0);
    const SelectBy by = gen() % 2 ? SelectBy::Score : SelectBy::Statistic;
    auto got = multi_lag_merge(cands, G, params, by);
    CHECK(got == oracle::merge(cands, G, params.c, by));

    // Lag order does not matter.
    auto shuffled = cands;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(multi_lag_merge(shuffled, G, params, by) == got);

    // Cluster anchors are at least cG apart, so consecutive outputs are never from the same cluster;
    // outputs that are all cG apart are a fixed point.
    bool separated = true;
    for (std::size_t i = 1; i < got.size(); ++i) separated &= got[i].location - got[i - 1].location >= params.c * G;
    if (separated) CHECK(multi_lag_merge({got}, G, params, by) == got);
  }
}

TEST_CASE("multi_lag_merge output may be closer than cG") {
  // Anchor 0 claims 99; the next cluster starts at 100 and its best member is 100.
  std::vector<ChangePointEstimate> c{{0, 0, 0.1, 0.5, 100}, {99, 0, 0.1, 0.9, 100}, {100, 1, 0.1, 0.2, 100}};
  auto out = multi_lag_merge({c}, 100, MergeParams{});
  CHECK(locations(out) == std::vector<int>{99, 100});
}

TEST_CASE("multiscale_merge") {
  MergeParams params;
  ChangePointEstimate fine{500, 0, 0.5, 1.0, 60}, coarse{540, 0, 0.5, 1.0, 120};
  auto out = multiscale_merge({{60, {fine}}, {120, {coarse}}}, params);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == fine);
  std::vector<ChangePointEstimate> one{{100, 0, 1, 1, 60}, {300, 0, 1, 1, 60}};
  CHECK(multiscale_merge({{60, one}}, params) == one);
  CHECK_THROWS_AS(multiscale_merge({{60, one}, {60, one}}, params), ConfigError);

  std::mt19937_64 gen(3003);
  for (int it = 0; it < 500; ++it) {
    const int levels = uniform_int(gen, 1, 4);
    std::vector<std::pair<int, std::vector<ChangePointEstimate>>> input;
    int G = uniform_int(gen, 20, 80);
    for (int r = 0; r < levels; ++r) {
      G += uniform_int(gen, 1, 60);
      std::vector<ChangePointEstimate> est;
      std::set<int> locs;
      const int count = uniform_int(gen, 0, 6);
      while (static_cast<int>(locs.size()) < count) locs.insert(uniform_int(gen, 1, 999));
      for (int loc : locs) est.push_back({loc, 0, 0.1, 0.5, G});
      std::shuffle(est.begin(), est.end(), gen);
      input.emplace_back(G, est);
    }
    MergeParams p;
    p.big_c = uniform_real(gen, 0.05, 0.95);
    CHECK(locations(multiscale_merge(input, p)) == oracle::multiscale(input, p.big_c));
  }
}

TEST_CASE("bandwidth ladder") {
  CHECK(default_bandwidth_ladder(1000) == std::vector<int>{62, 124, 186, 310});
  CHECK(default_bandwidth_ladder(500) == std::vector<int>{60, 120, 180});
  CHECK(default_bandwidth_ladder(4000) == std::vector<int>{250, 500, 750, 1250});
  CHECK(default_bandwidth_ladder(100).empty());
  CHECK(default_bandwidth(1000) == 166);
}

TEST_CASE("single-lag pipeline") {
  DetectionConfig cfg;
  cfg.bootstrap.reps = 49;
  cfg.bootstrap.b_n = default_block_parameter(400);
  SUBCASE("constant series raises the degenerate-scale error") {
    TimeSeries ts(400, 1, std::vector<double>(400, 2.0));
    CHECK_THROWS_AS(np_mojo_single(ts, 0, 66, cfg), DegenerateScaleError);
  }
  SUBCASE("constant series with an explicit scale finds nothing") {
    TimeSeries ts(400, 1, std::vector<double>(400, 2.0));
    cfg.scale = 1.0;
    auto res = np_mojo_single(ts, 0, 66, cfg);
    CHECK(res.estimates.empty());
    CHECK(std::abs(res.threshold()) < 1e-12);
  }
  SUBCASE("large mean shift") {
    std::mt19937_64 gen(6);
    auto v = npmojo::testing::gaussian_values(400, gen);
    for (int t = 200; t < 400; ++t) v[t] += 4.0;
    auto res = np_mojo_single(TimeSeries(400, 1, v), 0, 66, cfg);
    REQUIRE(res.estimates.size() == 1);
    CHECK(std::abs(res.estimates[0].location - 200) <= 10);
    CHECK(res.estimates[0].score == 1.0);
    CHECK(res.bootstrap.replicates.size() == 49);
  }
}

TEST_CASE("location invariance under joint rescaling of data and kernel") {
  std::mt19937_64 gen(12);
  auto v = npmojo::testing::gaussian_values(600, gen);
  for (int t = 300; t < 600; ++t) v[t] += 1.5;
  const double s = 3.7;
  std::vector<double> sv = v;
  for (auto& x : sv) x *= s;
  TimeSeries a(600, 1, v), b(600, 1, sv);
  for (auto family : {KernelFamily::QuadExpH2, KernelFamily::GaussH1}) {
    DetectionConfig ca, cb;
    ca.family = cb.family = family;
    ca.bootstrap.reps = cb.bootstrap.reps = 39;
    ca.scale = family == KernelFamily::QuadExpH2 ? 0.8 : 0.9;
    cb.scale = family == KernelFamily::QuadExpH2 ? 0.8 * s * s : 0.9 / s;
    for (int lag : {0, 1}) {
      auto ra = np_mojo_single(a, lag, 100, ca);
      auto rb = np_mojo_single(b, lag, 100, cb);
      for (std::size_t i = 0; i < ra.profile.values.size(); ++i)
        CHECK(std::abs(ra.profile.values[i] - rb.profile.values[i]) <= 1e-10);
      CHECK(locations(ra.estimates) == locations(rb.estimates));
    }
  }
}

TEST_CASE("adaptive lags stop at the first unproductive lag") {
  std::mt19937_64 gen(31);
  auto v = npmojo::testing::gaussian_values(600, gen);
  for (int t = 300; t < 600; ++t) v[t] += 3.0;
  DetectionConfig cfg;
  cfg.bootstrap.reps = 99;
  cfg.bootstrap.b_n = default_block_parameter(600);
  auto res = adaptive_lags(TimeSeries(600, 1, v), {0, 1, 2}, 100, cfg);
  CHECK(res.lags == std::vector<int>{0, 1, 2, 3});
  REQUIRE(res.merged.size() == 1);
  CHECK(std::abs(res.merged[0].location - 300) <= 10);
  REQUIRE(res.extra.size() == 1);
  CHECK(res.extra[0].lag == 3);

  SUBCASE("max_lag bounds the loop") {
    auto capped = adaptive_lags(TimeSeries(600, 1, v), {0, 1, 2}, 100, cfg, 2);
    CHECK(capped.lags == std::vector<int>{0, 1, 2});
  }
}
