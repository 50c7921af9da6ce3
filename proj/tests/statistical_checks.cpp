// Seeded Monte Carlo checks of detection behaviour on catalog scenarios.
// Usage: statistical_checks NAME [REPLICATIONS]

#include <json.hpp>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "npmojo/cli.hpp"
#include "npmojo/io.hpp"
#include "npmojo/pipeline.hpp"
#include "npmojo/simulate.hpp"

using namespace npmojo;

namespace {

struct Outcome {
  int hits = 0;
  int total = 0;
  double rate() const { return total ? static_cast<double>(hits) / total : 0.0; }
};

DetectionConfig config_for(std::uint64_t seed) {
  DetectionConfig cfg;
  cfg.bootstrap.master_seed = seed;
  return cfg;
}

LabeledSeries scenario(const std::string& id, int rep) {
  return generate({id, 0, static_cast<std::uint64_t>(rep), {}});
}

bool near_all(const std::vector<ChangePointEstimate>& est, const std::vector<int>& truth, double tol) {
  if (est.size() != truth.size()) return false;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (std::abs(est[i].location - truth[i]) > tol) return false;
  return true;
}

bool report(const std::string& name, const std::string& what, const Outcome& o, double min_rate) {
  const bool ok = o.rate() >= min_rate;
  std::printf("%s %s: %s %d/%d = %.3f (need >= %.2f)\n", ok ? "PASS" : "FAIL", name.c_str(), what.c_str(), o.hits,
              o.total, o.rate(), min_rate);
  return ok;
}

bool null_single(int reps) {
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    auto ls = scenario("N1", r);
    const int G = default_bandwidth(ls.data.n());
    o.hits += np_mojo_single(ls.data, 0, G, config_for(r)).estimates.empty();
  }
  return report("null_single", "N1 lag 0 empty", o, 0.85);
}

bool a1_single(int reps) {
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    auto ls = scenario("A1", r);
    const int G = default_bandwidth(ls.data.n());
    o.hits += np_mojo_single(ls.data, 0, G, config_for(r)).estimates.size() == 3;
  }
  return report("a1_single", "A1 lag 0 q_hat = 3", o, 0.90);
}

bool c1_multi(int reps) {
  Outcome count, by_lag1;
  for (int r = 0; r < reps; ++r, ++count.total, ++by_lag1.total) {
    auto ls = scenario("C1", r);
    const int G = default_bandwidth(ls.data.n());
    auto res = np_mojo_multi(ls.data, {0, 1, 2}, G, config_for(r));
    count.hits += res.merged.size() == 2;
    by_lag1.hits += res.merged.size() == 2 &&
                    std::all_of(res.merged.begin(), res.merged.end(), [](const auto& e) { return e.lag == 1; });
  }
  const bool a = report("c1_multi", "C1 lags {0,1,2} q_hat = 2", count, 0.90);
  const bool b = report("c1_multi", "C1 both changes represented by lag 1", by_lag1, 0.5 + 1e-9);
  return a && b;
}

bool c2_lags(int reps) {
  Outcome quiet, lag2;
  for (int r = 0; r < reps; ++r, ++quiet.total, ++lag2.total) {
    auto ls = scenario("C2", r);
    const int G = default_bandwidth(ls.data.n());
    auto res = np_mojo_multi(ls.data, {0, 1, 2}, G, config_for(r));
    quiet.hits += res.per_lag[0].estimates.empty() && res.per_lag[1].estimates.empty();
    lag2.hits += near_all(res.per_lag[2].estimates, ls.truth.changes, 0.5 * G);
  }
  const bool a = report("c2_lags", "C2 lags 0 and 1 contribute nothing", quiet, 0.5 + 1e-9);
  std::printf("INFO c2_lags: lag 2 finds both changes %d/%d\n", lag2.hits, lag2.total);
  return a;
}

bool n3_adaptive(int reps) {
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    auto ls = scenario("N3", r);
    const int G = default_bandwidth(ls.data.n());
    o.hits += adaptive_lags(ls.data, {0, 1, 2}, G, config_for(r)).merged.empty();
  }
  return report("n3_adaptive", "N3 adaptive empty", o, 0.75);
}

bool c1_adaptive(int reps) {
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    auto ls = scenario("C1", r);
    const int G = default_bandwidth(ls.data.n());
    o.hits += adaptive_lags(ls.data, {0, 1, 2}, G, config_for(r)).merged.size() == 2;
  }
  return report("c1_adaptive", "C1 adaptive q_hat = 2", o, 0.90);
}

// Single mean change of size 2 at 500 in N(0, 1) noise.
bool localization(int reps) {
  constexpr int kTheta = 500;
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    CustomSpec spec;
    spec.n = 1000;
    spec.changes = {kTheta};
    SegmentProcess before, after;
    after.mean = {2.0};
    spec.segments = {before, after};
    auto ls = generate_custom(spec, static_cast<std::uint64_t>(r));
    const int G = default_bandwidth(spec.n);
    auto lagged = make_lagged(ls.data, 0);
    auto prof = detector_profile(lagged, G, resolve_kernel(KernelFamily::QuadExpH2, std::nullopt, lagged, G));
    const auto it = std::max_element(prof.values.begin(), prof.values.end());
    const int argmax = prof.first_k() + static_cast<int>(it - prof.values.begin());
    o.hits += std::abs(argmax - kTheta) <= 0.2 * G;
  }
  return report("localization", "argmax within 0.2 G", o, 0.95);
}

bool cli_a1(int reps) {
  const auto dir = std::filesystem::temp_directory_path() / ("npmojo_stat_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  Outcome o;
  for (int r = 0; r < reps; ++r, ++o.total) {
    const auto csv = (dir / ("a1_" + std::to_string(r) + ".csv")).string();
    std::ostringstream sink, err, doc;
    const int sim = run_cli({"simulate", "--scenario", "A1", "--seed", std::to_string(r), "--out", csv}, sink, err);
    const int det = run_cli({"detect", csv, "--seed", std::to_string(r)}, doc, err);
    if (sim != 0 || det != 0) {
      std::printf("FAIL cli_a1: run %d exited with %d/%d: %s\n", r, sim, det, err.str().c_str());
      continue;
    }
    const auto j = nlohmann::json::parse(doc.str());
    std::vector<ChangePointEstimate> est;
    for (const auto& m : j.at("merged")) est.push_back({m.at("location").get<int>(), 0, 0.0, 0.0, 0});
    o.hits += near_all(est, {250, 500, 750}, 25);
  }
  std::filesystem::remove_all(dir);
  return report("cli_a1", "3 changes within 25 of truth", o, 0.90);
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::pair<std::function<bool(int)>, int>> checks{
      {"null_single", {null_single, 200}}, {"a1_single", {a1_single, 200}},
      {"c1_multi", {c1_multi, 200}},       {"c2_lags", {c2_lags, 200}},
      {"n3_adaptive", {n3_adaptive, 200}}, {"c1_adaptive", {c1_adaptive, 200}},
      {"localization", {localization, 100}}, {"cli_a1", {cli_a1, 50}},
  };
  if (argc < 2 || !checks.count(argv[1])) {
    std::fprintf(stderr, "usage: statistical_checks NAME [REPLICATIONS]\nchecks:");
    for (const auto& [name, _] : checks) std::fprintf(stderr, " %s", name.c_str());
    std::fprintf(stderr, "\n");
    return 2;
  }
  const auto& [fn, default_reps] = checks.at(argv[1]);
  const int reps = argc > 2 ? std::atoi(argv[2]) : default_reps;
  return fn(reps) ? 0 : 1;
}
