#include "npmojo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "npmojo/errors.hpp"
#include "npmojo/io.hpp"
#include "npmojo/metrics.hpp"
#include "npmojo/pipeline.hpp"
#include "npmojo/simulate.hpp"

namespace npmojo {

namespace {

using json = nlohmann::json;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string("empty ") + what);
  return out;
}

struct DetectOptions {
  std::string input;
  bool header = false;
  std::string impute = "none";
  std::string lags = "0,1,2";
  std::string bandwidth = "auto";
  bool multiscale = false;
  bool adaptive = false;
  int max_lag = kDefaultMaxLag;
  std::string kernel = "h2";
  std::optional<double> scale;
  double alpha = 0.1;
  int reps = 499;
  std::optional<double> bn;
  double eta = 0.4;
  double merge_c = 1.0;
  double ms_c = 0.8;
  double min_exceed_frac = 0.02;
  std::string select = "score";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string dump_profile;
};

json estimate_json(const ChangePointEstimate& e, bool with_lag) {
  json j{{"location", e.location}, {"stat", e.stat}, {"score", e.score}};
  if (with_lag) {
    j["lag"] = e.lag;
    j["bandwidth"] = e.bandwidth;
  }
  return j;
}

json lag_json(const SingleLagResult& r) {
  json changes = json::array();
  for (const auto& e : r.estimates) changes.push_back(estimate_json(e, false));
  return json{{"lag", r.lag},
              {"bandwidth", r.bandwidth},
              {"kernel_scale", r.profile.kernel.scale()},
              {"threshold", r.threshold()},
              {"changes", changes}};
}

int cmd_detect(const DetectOptions& o, std::ostream& out) {
  const Impute impute = o.impute == "none" ? Impute::None
                        : o.impute == "locf" ? Impute::Locf
                                             : throw ConfigError("--impute must be none or locf");
  if (o.multiscale && o.adaptive) throw ConfigError("--multiscale and --adaptive cannot be combined");
  if (o.select != "score" && o.select != "stat") throw ConfigError("--select must be score or stat");

  TimeSeries ts = read_csv_file(o.input, o.header, impute);
  const std::size_t n = ts.n();

  DetectionConfig cfg;
  cfg.family = parse_kernel_family(o.kernel);
  cfg.scale = o.scale;
  if (o.scale) KernelSpec(cfg.family, *o.scale);  // validate early
  cfg.bootstrap.reps = o.reps;
  cfg.bootstrap.alpha = o.alpha;
  cfg.bootstrap.b_n = o.bn ? *o.bn : default_block_parameter(n);
  cfg.bootstrap.master_seed = o.seed;
  cfg.bootstrap.threads = o.threads;
  cfg.bootstrap.validate();
  cfg.merge = {o.eta, o.merge_c, o.ms_c, o.min_exceed_frac};
  cfg.merge.validate();
  cfg.select = o.select == "score" ? SelectBy::Score : SelectBy::Statistic;

  std::vector<int> lags = parse_int_list(o.lags, "lag list");
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  if (lags.front() < 0) throw ConfigError("lags must be non-negative");
  const bool auto_bw = o.bandwidth == "auto";
  std::vector<int> bandwidths;
  if (o.multiscale)
    bandwidths = auto_bw ? default_bandwidth_ladder(n) : parse_int_list(o.bandwidth, "bandwidth list");
  else
    bandwidths = auto_bw ? std::vector<int>{default_bandwidth(n)} : parse_int_list(o.bandwidth, "bandwidth");
  if (bandwidths.empty()) throw ConfigError("series too short for the default bandwidth ladder");
  if (!o.multiscale && bandwidths.size() != 1) throw ConfigError("several bandwidths require --multiscale");
  for (int G : bandwidths)
    for (int lag : lags) check_bandwidth(n, G, lag);

  std::string mode = o.multiscale ? "multiscale" : o.adaptive ? "adaptive" : lags.size() == 1 ? "single" : "multi";

  json lag_entries = json::array();
  std::vector<ChangePointEstimate> merged;
  std::vector<const SingleLagResult*> runs;
  MultiLagResult multi;
  MultiscaleResult ms;
  AdaptiveResult ad;
  if (o.multiscale) {
    ms = np_mojo_multiscale(ts, lags, bandwidths, cfg);
    for (const auto& level : ms.per_bandwidth)
      for (const auto& r : level.per_lag) runs.push_back(&r);
    merged = ms.merged;
  } else if (o.adaptive) {
    ad = adaptive_lags(ts, lags, bandwidths[0], cfg, o.max_lag);
    for (const auto& r : ad.initial.per_lag) runs.push_back(&r);
    for (const auto& r : ad.extra) runs.push_back(&r);
    merged = ad.merged;
  } else {
    multi = np_mojo_multi(ts, lags, bandwidths[0], cfg);
    for (const auto& r : multi.per_lag) runs.push_back(&r);
    merged = multi.merged;
  }
  for (const auto* r : runs) lag_entries.push_back(lag_json(*r));

  json merged_json = json::array();
  for (const auto& e : merged) merged_json.push_back(estimate_json(e, true));

  json config{{"mode", mode},
              {"input", o.input},
              {"n", n},
              {"p", ts.p()},
              {"lags", lags},
              {"bandwidth", o.multiscale ? json(bandwidths) : json(bandwidths[0])},
              {"bandwidth_rule", auto_bw ? (o.multiscale ? "fibonacci ladder from max(60, n/16)" : "floor(n/6)")
                                         : "user"},
              {"kernel", to_string(cfg.family)},
              {"kernel_scale", o.scale ? json(*o.scale)
                               : cfg.family == KernelFamily::EnergyH3 ? json(1.0)
                                                                       : json("median trick (per lag)")},
              {"alpha", cfg.bootstrap.alpha},
              {"reps", cfg.bootstrap.reps},
              {"b_n", cfg.bootstrap.b_n},
              {"b_n_rule", o.bn ? "user" : "1.5*n^(1/3)"},
              {"eta", cfg.merge.eta},
              {"merge_c", cfg.merge.c},
              {"ms_C", cfg.merge.big_c},
              {"min_exceed_frac", cfg.merge.min_exceed_frac},
              {"select", o.select},
              {"seed", o.seed}};
  if (o.adaptive) {
    config["max_lag"] = o.max_lag;
    config["lags_run"] = ad.lags;
  }
  json doc{{"config", config}, {"lags", lag_entries}, {"merged", merged_json}};
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_text_file(o.out, text);

  if (!o.dump_profile.empty()) {
    std::ostringstream csv;
    csv << "lag,bandwidth,k,value,threshold\n";
    for (const auto* r : runs)
      for (int k = r->profile.first_k(); k <= r->profile.last_k(); ++k)
        csv << r->lag << ',' << r->bandwidth << ',' << k << ',' << format_double(r->profile.at(k)) << ','
            << format_double(r->threshold()) << '\n';
    write_text_file(o.dump_profile, csv.str());
  }
  return kExitOk;
}

std::string truth_path_for(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".truth.json";
  return csv_path + ".truth.json";
}

struct SimulateOptions {
  std::string scenario;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
  bool header = false;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  ScenarioSpec spec{o.scenario, o.n, o.seed, {}};
  LabeledSeries ls = generate(spec);
  std::ostringstream csv;
  write_csv(csv, ls.data, o.header);
  json truth{{"n", ls.truth.n}, {"changes", ls.truth.changes}, {"scenario", o.scenario}, {"seed", o.seed}};
  if (!ls.detectable_lags.empty()) {
    json d = json::object();
    for (const auto& [lag, idx] : ls.detectable_lags) d[std::to_string(lag)] = idx;
    truth["detectable_lags"] = d;
  }
  if (o.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  write_text_file(o.out, csv.str());
  write_text_file(o.truth.empty() ? truth_path_for(o.out) : o.truth, truth.dump(2) + "\n");
  return kExitOk;
}

json parse_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Accepts a truth sidecar {n, changes} or a detect result document.
Segmentation segmentation_from_json(const json& j, const std::string& path) {
  try {
    if (j.contains("merged")) {
      std::vector<int> changes;
      for (const auto& e : j.at("merged")) changes.push_back(e.at("location").get<int>());
      std::sort(changes.begin(), changes.end());
      return Segmentation(j.at("config").at("n").get<std::size_t>(), changes);
    }
    return Segmentation(j.at("n").get<std::size_t>(), j.at("changes").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' lacks n/changes: " + e.what());
  }
}

struct EvaluateOptions {
  std::string est;
  std::string truth;
  std::string batch;
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  json doc;
  if (!o.batch.empty()) {
    if (!o.est.empty() || !o.truth.empty()) throw ConfigError("--batch excludes --est/--truth");
    namespace fs = std::filesystem;
    if (!fs::is_directory(o.batch)) throw InputError("'" + o.batch + "' is not a directory");
    std::vector<std::string> stems;
    const std::string suffix = ".truth.json";
    for (const auto& entry : fs::directory_iterator(o.batch)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
    std::sort(stems.begin(), stems.end());
    if (stems.empty()) throw InputError("no *.truth.json files in '" + o.batch + "'");
    std::vector<EvalReport> reports;
    json runs = json::array();
    for (const auto& stem : stems) {
      const std::string tp = (fs::path(o.batch) / (stem + suffix)).string();
      const std::string ep = (fs::path(o.batch) / (stem + ".result.json")).string();
      Segmentation truth = segmentation_from_json(parse_json_file(tp), tp);
      Segmentation est = segmentation_from_json(parse_json_file(ep), ep);
      reports.push_back(evaluate(est, truth));
      runs.push_back({{"name", stem}, {"cm", reports.back().cm}, {"vm", reports.back().vm},
                      {"q_hat", reports.back().q_hat}, {"q_true", reports.back().q_true}});
    }
    Summary s = aggregate(reports);
    std::ostringstream row;
    row << std::fixed << std::setprecision(3);
    for (double v : s.q_diff) row << v << ' ';
    row << "| " << s.mean_cm << ' ' << s.mean_vm;
    doc = {{"count", s.count},
           {"q_diff", {{"<=-2", s.q_diff[0]}, {"-1", s.q_diff[1]}, {"0", s.q_diff[2]}, {"1", s.q_diff[3]},
                       {">=2", s.q_diff[4]}}},
           {"cm", s.mean_cm},
           {"vm", s.mean_vm},
           {"row", row.str()},
           {"runs", runs}};
  } else {
    if (o.est.empty() || o.truth.empty()) throw ConfigError("evaluate needs --est and --truth, or --batch");
    Segmentation truth = segmentation_from_json(parse_json_file(o.truth), o.truth);
    Segmentation est = segmentation_from_json(parse_json_file(o.est), o.est);
    EvalReport r = evaluate(est, truth);
    doc = {{"cm", r.cm}, {"vm", r.vm}, {"q_hat", r.q_hat}, {"q_true", r.q_true}};
  }
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_text_file(o.out, text);
  return kExitOk;
}

struct BenchOptions {
  std::string ns = "1000,2000,4000";
  std::string g_rule = "n/6";
  int reps = 1;
  std::uint64_t seed = 0;
  int lag = 0;
  bool json_out = false;
};

int bandwidth_from_rule(const std::string& rule, std::size_t n) {
  if (rule.rfind("n/", 0) == 0) {
    int div = parse_int_list(rule.substr(2), "bandwidth rule").at(0);
    if (div < 1) throw ConfigError("bandwidth rule divisor must be >= 1");
    return static_cast<int>(n / static_cast<std::size_t>(div));
  }
  return parse_int_list(rule, "bandwidth rule").at(0);
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.reps < 1) throw ConfigError("--reps must be >= 1");
  std::vector<int> ns = parse_int_list(o.ns, "n list");
  json rows = json::array();
  std::vector<double> x, y;
  for (int n : ns) {
    if (n < 10) throw ConfigError("bench lengths must be >= 10");
    const int G = bandwidth_from_rule(o.g_rule, static_cast<std::size_t>(n));
    check_bandwidth(static_cast<std::size_t>(n), G, o.lag);
    LabeledSeries data = generate({"N1", static_cast<std::size_t>(n), o.seed, {}});
    LaggedSeries ls = make_lagged(data.data, o.lag);
    KernelSpec kernel(KernelFamily::QuadExpH2, median_trick(ls, G));
    std::vector<double> times;
    std::uint64_t evals = 0;
    for (int r = 0; r < o.reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      DetectorProfile prof = detector_profile(ls, G, kernel);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      evals = prof.kernel_evaluations;
    }
    std::sort(times.begin(), times.end());
    const double nG = static_cast<double>(n) * G;
    rows.push_back({{"n", n}, {"G", G}, {"evaluations", evals}, {"seconds", times[times.size() / 2]},
                    {"evaluations_per_nG", static_cast<double>(evals) / nG}});
    x.push_back(std::log(nG));
    y.push_back(std::log(static_cast<double>(evals)));
  }
  std::optional<double> slope;
  if (x.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    if (sxx > 0) slope = sxy / sxx;
  }
  const bool ok = !slope || (*slope >= 0.9 && *slope <= 1.15);
  if (o.json_out) {
    json doc{{"rows", rows}, {"slope", slope ? json(*slope) : json(nullptr)}, {"slope_ok", ok}};
    out << doc.dump(2) << "\n";
  } else {
    out << std::setw(8) << "n" << std::setw(8) << "G" << std::setw(14) << "evaluations" << std::setw(10) << "ratio"
        << std::setw(12) << "seconds" << "\n";
    const double base = rows[0]["evaluations"].get<double>();
    for (const auto& r : rows)
      out << std::setw(8) << r["n"].get<int>() << std::setw(8) << r["G"].get<int>() << std::setw(14)
          << r["evaluations"].get<std::uint64_t>() << std::setw(10) << std::fixed << std::setprecision(3)
          << r["evaluations"].get<double>() / base << std::setw(12) << std::setprecision(4)
          << r["seconds"].get<double>() << "\n";
    if (slope) out << "log-log slope of evaluations vs nG: " << std::setprecision(4) << *slope << "\n";
  }
  if (!ok) {
    err << "evaluation count slope " << *slope << " outside [0.9, 1.15]\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonparametric multi-lag change point detection"};
  app.require_subcommand(1);

  DetectOptions d;
  auto* detect = app.add_subcommand("detect", "Detect change points in a CSV time series");
  detect->add_option("input", d.input, "CSV file (rows = time, columns = dimensions)")->required();
  detect->add_flag("--header", d.header, "First CSV row is a header");
  detect->add_option("--impute", d.impute, "Missing values: none (reject) or locf");
  detect->add_option("--lags", d.lags, "Comma-separated lags");
  detect->add_option("--bandwidth", d.bandwidth, "G, 'auto' (n/6), or a list with --multiscale");
  detect->add_flag("--multiscale", d.multiscale, "Bottom-up merge over a bandwidth ladder");
  detect->add_flag("--adaptive", d.adaptive, "Extend the lag set until a lag adds nothing");
  detect->add_option("--max-lag", d.max_lag, "Upper bound for --adaptive");
  detect->add_option("--kernel", d.kernel, "h1, h2 or h3");
  detect->add_option("--scale", d.scale, "Kernel scale (beta, delta or gamma); default median trick");
  detect->add_option("--alpha", d.alpha, "Bootstrap level");
  detect->add_option("--reps", d.reps, "Bootstrap replications");
  detect->add_option("--bn", d.bn, "Multiplier AR parameter b_n (default 1.5 n^(1/3))");
  detect->add_option("--eta", d.eta, "Local-maximum window fraction");
  detect->add_option("--merge-c", d.merge_c, "Multi-lag clustering constant c");
  detect->add_option("--ms-C", d.ms_c, "Multiscale merging constant C");
  detect->add_option("--min-exceed-frac", d.min_exceed_frac, "Minimal exceedance run as a fraction of G");
  detect->add_option("--select", d.select, "Cluster representative: score or stat");
  detect->add_option("--seed", d.seed, "Master seed");
  detect->add_option("--threads", d.threads, "Worker threads for the bootstrap");
  detect->add_option("--out", d.out, "Write the JSON result here instead of stdout");
  detect->add_option("--dump-profile", d.dump_profile, "Write detector profiles as CSV");

  SimulateOptions s;
  auto* simulate = app.add_subcommand("simulate", "Generate a catalog scenario");
  simulate->add_option("--scenario", s.scenario, "Scenario id, e.g. A1, C2, EXAMPLE1")->required();
  simulate->add_option("--n", s.n, "Series length (default: catalog length)");
  simulate->add_option("--seed", s.seed, "Seed");
  simulate->add_option("--out", s.out, "CSV path (truth JSON written alongside)");
  simulate->add_option("--truth", s.truth, "Truth JSON path");
  simulate->add_flag("--header", s.header, "Write a header row");

  EvaluateOptions e;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score an estimated segmentation against the truth");
  evaluate_cmd->add_option("--est", e.est, "Detect result or {n, changes} JSON");
  evaluate_cmd->add_option("--truth", e.truth, "Truth JSON");
  evaluate_cmd->add_option("--batch", e.batch, "Directory of NAME.truth.json / NAME.result.json pairs");
  evaluate_cmd->add_option("--out", e.out, "Output path");

  BenchOptions b;
  auto* bench = app.add_subcommand("bench", "Time the detector and count kernel evaluations");
  bench->add_option("--n", b.ns, "Comma-separated series lengths");
  bench->add_option("--g-rule", b.g_rule, "Bandwidth: n/<k> or a fixed G");
  bench->add_option("--reps", b.reps, "Timing repetitions per length");
  bench->add_option("--seed", b.seed, "Seed for the generated N1 data");
  bench->add_option("--lag", b.lag, "Lag");
  bench->add_flag("--json", b.json_out, "JSON output");

  std::vector<std::string> argv_store{"npmojo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*detect) return cmd_detect(d, out);
    if (*simulate) return cmd_simulate(s, out);
    if (*evaluate_cmd) return cmd_evaluate(e, out);
    if (*bench) return cmd_bench(b, out, err);
  } catch (const DegenerateScaleError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitDegenerate;
  } catch (const InputError& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace npmojo
