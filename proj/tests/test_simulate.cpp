#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "npmojo/errors.hpp"
#include "npmojo/simulate.hpp"

using namespace npmojo;

namespace {

struct SegmentMoments {
  double mean;
  double var;
};

// Averages per-seed segment means and variances (about the known mean) over seeds and
// checks both against the analytic values within five standard errors across seeds.
void check_moments(const std::string& id, std::size_t coord, const std::vector<SegmentMoments>& expect,
                   bool check_var = true, int seeds = 40) {
  const auto changes = catalog_changes(id);
  const std::size_t n = catalog_length(id);
  std::vector<std::size_t> bounds{0};
  for (int c : changes) bounds.push_back(static_cast<std::size_t>(c));
  bounds.push_back(n);
  REQUIRE(expect.size() == bounds.size() - 1);
  for (std::size_t j = 0; j < expect.size(); ++j) {
    std::vector<double> means, vars;
    for (int s = 0; s < seeds; ++s) {
      auto ls = generate({id, 0, static_cast<std::uint64_t>(1000 + s), {}});
      double m = 0.0, v = 0.0;
      for (std::size_t t = bounds[j]; t < bounds[j + 1]; ++t) {
        const double x = ls.data(t, coord);
        m += x;
        v += (x - expect[j].mean) * (x - expect[j].mean);
      }
      const double len = static_cast<double>(bounds[j + 1] - bounds[j]);
      means.push_back(m / len);
      vars.push_back(v / len);
    }
    auto avg_se = [](const std::vector<double>& x) {
      const double a = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
      double ss = 0.0;
      for (double y : x) ss += (y - a) * (y - a);
      return std::make_pair(a, std::sqrt(ss / (x.size() - 1) / x.size()));
    };
    auto [m, mse] = avg_se(means);
    INFO(id << " segment " << j << " coordinate " << coord);
    CHECK(std::abs(m - expect[j].mean) <= 5.0 * mse + 1e-12);
    if (check_var) {
      auto [v, vse] = avg_se(vars);
      CHECK(std::abs(v - expect[j].var) <= 5.0 * vse + 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("catalog truth") {
  auto a1 = generate({"A1", 1000, 1, {}});
  CHECK(a1.truth.changes == std::vector<int>{250, 500, 750});
  CHECK(a1.data.p() == 1);
  CHECK(a1.data.n() == 1000);
  auto def = scenario_definition("A1");
  REQUIRE(def.segments.size() == 4);
  const double mu[] = {0, 1, 0, 1};
  for (int j = 0; j < 4; ++j) CHECK(def.segments[j].mean == std::vector<double>{mu[j]});

  auto c3 = scenario_definition("C3");
  CHECK(c3.changes == std::vector<int>{500});
  REQUIRE(c3.segments.size() == 2);
  REQUIRE(c3.segments[0].garch);
  REQUIRE(c3.segments[1].garch);
  CHECK(c3.segments[0].garch->omega == 0.01);
  CHECK(c3.segments[0].garch->alpha == 0.7);
  CHECK(c3.segments[0].garch->beta == 0.2);
  CHECK(c3.segments[1].garch->alpha == 0.2);
  CHECK(c3.segments[1].garch->beta == 0.7);

  CHECK(catalog_changes("C1") == std::vector<int>{333, 667});
  CHECK(catalog_changes("EXAMPLE1") == std::vector<int>{300, 650});
  CHECK(catalog_changes("N4").empty());
  CHECK(catalog_length("M7") == 10000);

  for (const auto& id : catalog_ids()) {
    auto ls = generate({id, 0, 5, {}});
    INFO(id);
    CHECK(ls.truth.changes == catalog_changes(id));
    CHECK(ls.truth.n == catalog_length(id));
    CHECK(ls.data.n() == catalog_length(id));
    CHECK(ls.scenario == id);
  }
  CHECK(generate({"C1", 0, 1, {}}).detectable_lags.at(1) == std::vector<int>{1, 2});
  CHECK(generate({"C2", 0, 1, {}}).detectable_lags.at(2) == std::vector<int>{1, 2});
  CHECK(generate({"A1", 0, 1, {}}).detectable_lags.empty());
}

TEST_CASE("change points scale with n") {
  CHECK(generate({"A1", 2000, 1, {}}).truth.changes == std::vector<int>{500, 1000, 1500});
  CHECK(generate({"A1", 500, 1, {}}).truth.changes == std::vector<int>{125, 250, 375});
  CHECK(generate({"C1", 500, 1, {}}).truth.changes == std::vector<int>{166, 333});
  CHECK_THROWS_AS(generate({"M7", 12, 1, {}}), ConfigError);
  CHECK_THROWS_AS(generate({"N1", 5, 1, {}}), ConfigError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(generate({"Z9", 0, 1, {}}), ConfigError);
  CHECK_THROWS_AS(generate({"N1", 0, 1, {{"sigma", 2.0}}}), ConfigError);
  CHECK_THROWS_AS(generate({"N1", 0, 1, {{"n7_scale", 0.5}}}), ConfigError);
  CHECK_THROWS_AS(generate({"N1", 0, 1, {{"burn_in", -1}}}), ConfigError);
  // The coefficient matrix exactly as printed is explosive.
  CHECK_THROWS_AS(generate({"N7", 0, 1, {{"n7_scale", 1.0}}}), ConfigError);
  CHECK_NOTHROW(generate({"N7", 0, 1, {}}));
  CHECK_NOTHROW(generate({"N1", 0, 1, {{"burn_in", 0}}}));
}

TEST_CASE("reproducibility") {
  for (const auto& id : {"N1", "B3", "C3", "D2", "M5", "EXAMPLE1"}) {
    auto a = generate({id, 0, 42, {}});
    auto b = generate({id, 0, 42, {}});
    auto c = generate({id, 0, 43, {}});
    CHECK(a.data.values() == b.data.values());
    CHECK(a.data.values() != c.data.values());
  }
}

TEST_CASE("custom pieces") {
  SUBCASE("one Gaussian segment equals N1") {
    CustomSpec spec;
    spec.n = 1000;
    spec.segments = {SegmentProcess{}};
    CHECK(generate_custom(spec, 9).data.values() == generate({"N1", 0, 9, {}}).data.values());
  }
  SUBCASE("EXAMPLE1 from pieces equals the catalog") {
    const InnovationLaw w{InnovationLaw::Kind::Gaussian, 0.0, 0.0, std::sqrt(0.75)};
    auto piece = [&](double a, double mu) {
      SegmentProcess s;
      s.laws = {w};
      s.ar = {{{a}}};
      s.mean = {mu};
      return s;
    };
    CustomSpec spec;
    spec.n = 1000;
    spec.changes = {300, 650};
    spec.segments = {piece(0.5, 0.0), piece(0.5, 0.7), piece(-0.5, 0.7)};
    auto custom = generate_custom(spec, 21);
    auto catalog = generate({"EXAMPLE1", 0, 21, {}});
    CHECK(custom.data.values() == catalog.data.values());
    CHECK(custom.truth == catalog.truth);
  }
  SUBCASE("unit-root AR is rejected") {
    CustomSpec spec;
    spec.n = 100;
    SegmentProcess s;
    s.ar = {{{1.0}}};
    spec.segments = {s};
    CHECK_THROWS_AS(generate_custom(spec, 1), ConfigError);
    CHECK_THROWS_AS(check_stationary({{{0.5}}, {{0.5}}}), ConfigError);
    CHECK_NOTHROW(check_stationary({{{0.5}}, {{0.3}}}));
  }
  SUBCASE("malformed pieces") {
    CustomSpec spec;
    spec.n = 100;
    spec.changes = {50};
    spec.segments = {SegmentProcess{}};
    CHECK_THROWS_AS(generate_custom(spec, 1), ConfigError);
    SegmentProcess g;
    g.garch = GarchParams{0.1, 0.6, 0.5};
    spec.segments = {SegmentProcess{}, g};
    CHECK_THROWS_AS(generate_custom(spec, 1), ConfigError);
  }
  SUBCASE("shared innovations across segments with the same law") {
    CustomSpec spec;
    spec.n = 200;
    spec.changes = {100};
    SegmentProcess a, b;
    b.mean = {5.0};
    spec.segments = {a, b};
    auto ls = generate_custom(spec, 4);
    auto base = generate_custom(CustomSpec{200, 1, {}, {a}, Coupling::Shared, 500}, 4);
    for (std::size_t t = 0; t < 200; ++t) CHECK(ls.data(t, 0) == base.data(t, 0) + (t >= 100 ? 5.0 : 0.0));
  }
}

TEST_CASE("segment moments") {
  const double t5_var = 5.0 / 3.0;
  check_moments("N1", 0, {{0, 1}});
  check_moments("N2", 0, {{0, t5_var}});
  check_moments("N3", 0, {{0, 1 / (1 - 0.49)}});
  check_moments("N4", 0, {{0, 3.3}});
  check_moments("N5", 0, {{0, 0.5 / 0.6}});
  check_moments("N6", 0, {{0, 0}}, false);
  check_moments("A1", 0, {{0, 1}, {1, 1}, {0, 1}, {1, 1}});
  check_moments("A2", 0, {{0, 1}, {1, 1}, {0, 1}, {1, 1}});
  check_moments("A3", 0, {{0, 1}, {1, 1}, {0, 1}, {1, 1}});
  check_moments("A4", 0, {{0, 1}, {1, 1}, {0, 1}, {1, 1}});
  check_moments("A5", 0, {{0, 1}, {0.5, 1}, {0, 1}, {0.5, 1}});
  check_moments("A5", 7, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  check_moments("B1", 0, {{0, 0.25}, {0, 1}, {0, 0.25}, {0, 1}});
  check_moments("B2", 0, {{0, 0.25}, {0, 1}, {0, 0.25}, {0, 1}});
  check_moments("B3", 0, {{0, 1 / 0.84}, {0, 4 / 0.84}, {0, 1 / 0.84}, {0, 4 / 0.84}});
  check_moments("B4", 1, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  check_moments("B6", 4, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  check_moments("C1", 0, {{0, 1 / 0.36}, {0, 1 / 0.36}, {0, 1 / 0.36}});
  check_moments("C2", 0, {{0, 1.49}, {0, 1.49}, {0, 1.49}});
  check_moments("C3", 0, {{0, 0.1}, {0, 0.1}}, false);
  check_moments("C5", 0, {{0, 2.01}, {0, 2.01}, {0, 2.01}});
  check_moments("D1", 0, {{0, 1}, {0, 1}, {0, 1}}, false);
  check_moments("D2", 0, {{0.5, 0.25}, {0.5, 0.25}, {0.5, 0.25}});
  check_moments("D3", 0, {{0, 0.25 / 0.84}, {0, 0.25 / 0.84}, {0, 0.25 / 0.84}});
  check_moments("EXAMPLE1", 0, {{0, 1}, {0.7, 1}, {0.7, 1}});
}

TEST_CASE("covariance mixing") {
  // B4 second segment: correlation 0.9 between coordinates.
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int s = 0; s < 10; ++s) {
    auto ls = generate({"B4", 0, static_cast<std::uint64_t>(s), {}});
    for (std::size_t t = 250; t < 500; ++t) {
      sxy += ls.data(t, 0) * ls.data(t, 1);
      sxx += ls.data(t, 0) * ls.data(t, 0);
      syy += ls.data(t, 1) * ls.data(t, 1);
    }
  }
  CHECK(std::abs(sxy / std::sqrt(sxx * syy) - 0.9) < 0.02);
}
