#include "glr/bench.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "glr/errors.hpp"
#include "glr/rng.hpp"

namespace glr {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void HarnessConfig::validate() const {
  glr.validate();
  baselines.validate();
  oracle.validate();
  if (fit.ego_degree < 1 || fit.target_degree < 1) {
    throw ConfigError("fit: degrees must be at least 1");
  }
  if (!(fit.sigma0 > 0.0) || !(fit.sigma1 >= fit.sigma0)) {
    throw ConfigError("fit: require 0 < sigma0 <= sigma1");
  }
}

namespace {

ordered_json config_doc(const HarnessConfig& c) {
  ordered_json j;
  j["glr"] = {{"n1", c.glr.n1},
              {"n2", c.glr.n2},
              {"horizon", c.glr.horizon},
              {"car_length", c.glr.car_length},
              {"car_width", c.glr.car_width},
              {"pcol_clip", c.glr.pcol_clip}};
  j["baselines"] = {{"time_steps", c.baselines.time_steps},
                    {"discount", c.baselines.discount},
                    {"particles", c.baselines.particles},
                    {"qmlgl_samples", c.baselines.qmlgl_samples},
                    {"circle_radius", c.baselines.circle_radius},
                    {"vspf_velocity_scaling", c.baselines.vspf_velocity_scaling},
                    {"dbiub_rect_pcol", c.baselines.dbiub_rect_pcol}};
  j["oracle"] = {{"sample_count", c.oracle.sample_count},
                 {"time_steps", c.oracle.time_steps},
                 {"seed", c.oracle.seed}};
  j["fit"] = {{"ego_degree", c.fit.ego_degree},
              {"target_degree", c.fit.target_degree},
              {"sigma0", c.fit.sigma0},
              {"sigma1", c.fit.sigma1}};
  j["seed"] = c.seed;
  return j;
}

template <typename T>
void read_field(const json& section, const std::string& section_name, const char* key, T& out) {
  const auto it = section.find(key);
  if (it == section.end()) {
    return;
  }
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: " + section_name + "." + key + " has the wrong type");
  }
}

void reject_unknown(const json& section, const std::string& name,
                    std::initializer_list<const char*> known) {
  for (const auto& item : section.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw ConfigError("config: unknown key " + name + "." + item.key());
    }
  }
}

}  // namespace

std::string config_to_json(const HarnessConfig& config) { return config_doc(config).dump(2); }

HarnessConfig config_from_json(std::string_view text, HarnessConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("config: top-level value must be an object");
  }
  reject_unknown(doc, "<root>", {"glr", "baselines", "oracle", "fit", "seed"});
  const auto section = [&doc](const char* key) -> json {
    const auto it = doc.find(key);
    if (it == doc.end()) {
      return json::object();
    }
    if (!it->is_object()) {
      throw ConfigError(std::string("config: ") + key + " must be an object");
    }
    return *it;
  };
  const json g = section("glr");
  reject_unknown(g, "glr", {"n1", "n2", "horizon", "car_length", "car_width", "pcol_clip"});
  read_field(g, "glr", "n1", base.glr.n1);
  read_field(g, "glr", "n2", base.glr.n2);
  read_field(g, "glr", "horizon", base.glr.horizon);
  read_field(g, "glr", "car_length", base.glr.car_length);
  read_field(g, "glr", "car_width", base.glr.car_width);
  read_field(g, "glr", "pcol_clip", base.glr.pcol_clip);
  const json b = section("baselines");
  reject_unknown(b, "baselines", {"time_steps", "discount", "particles", "qmlgl_samples",
                                  "circle_radius", "vspf_velocity_scaling", "dbiub_rect_pcol"});
  read_field(b, "baselines", "time_steps", base.baselines.time_steps);
  read_field(b, "baselines", "discount", base.baselines.discount);
  read_field(b, "baselines", "particles", base.baselines.particles);
  read_field(b, "baselines", "qmlgl_samples", base.baselines.qmlgl_samples);
  read_field(b, "baselines", "circle_radius", base.baselines.circle_radius);
  read_field(b, "baselines", "vspf_velocity_scaling", base.baselines.vspf_velocity_scaling);
  read_field(b, "baselines", "dbiub_rect_pcol", base.baselines.dbiub_rect_pcol);
  const json o = section("oracle");
  reject_unknown(o, "oracle", {"sample_count", "time_steps", "seed"});
  read_field(o, "oracle", "sample_count", base.oracle.sample_count);
  read_field(o, "oracle", "time_steps", base.oracle.time_steps);
  read_field(o, "oracle", "seed", base.oracle.seed);
  const json f = section("fit");
  reject_unknown(f, "fit", {"ego_degree", "target_degree", "sigma0", "sigma1"});
  read_field(f, "fit", "ego_degree", base.fit.ego_degree);
  read_field(f, "fit", "target_degree", base.fit.target_degree);
  read_field(f, "fit", "sigma0", base.fit.sigma0);
  read_field(f, "fit", "sigma1", base.fit.sigma1);
  read_field(doc, "<root>", "seed", base.seed);
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

HarnessConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string() + ": cannot open config file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string oracle_config_hash(const HarnessConfig& config) {
  const ordered_json doc = config_doc(config);
  ordered_json relevant;
  relevant["oracle"] = doc["oracle"];
  relevant["fit"] = doc["fit"];
  relevant["car"] = {{"horizon", config.glr.horizon},
                     {"car_length", config.glr.car_length},
                     {"car_width", config.glr.car_width}};
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << stable_hash(relevant.dump());
  return os.str();
}

std::uint64_t oracle_seed_for(const HarnessConfig& config, std::string_view scenario_id) {
  return derive_seed(config.oracle.seed, stable_hash(scenario_id));
}

FittedScenario fit_scenario(const Scenario& scenario, const FitConfig& fit) {
  BezierFit ego = fit_bezier(scenario.ego.track, fit.ego_degree);
  const BezierFit target_mean = fit_bezier(scenario.target.track, fit.target_degree);
  ProbBezierCurve target =
      fit_prob_bezier(scenario.target.track, fit.target_degree, fit.sigma0, fit.sigma1);
  return FittedScenario{scenario.id, std::move(ego.curve), std::move(target), ego.residual_rms,
                        target_mean.residual_rms};
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kGlr:
      return "glr";
    case Method::kQmlgl:
      return "qmlgl";
    case Method::kVsPf:
      return "vspf";
    case Method::kRiskDensity:
      return "riskdensity";
    case Method::kDiscountedBiub:
      return "dbiub";
    case Method::kMutualIndependence:
      return "mi";
    case Method::kMaxCircle:
      return "maxcircle";
    case Method::kNoop:
      return "noop";
  }
  return "unknown";
}

std::vector<Method> all_methods() {
  return {Method::kGlr,           Method::kQmlgl,
          Method::kVsPf,          Method::kRiskDensity,
          Method::kDiscountedBiub, Method::kMutualIndependence,
          Method::kMaxCircle};
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    std::string_view token =
        list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) {
      token.remove_prefix(1);
    }
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) {
      token.remove_suffix(1);
    }
    if (token == "all") {
      for (const Method m : all_methods()) {
        out.push_back(m);
      }
    } else {
      bool found = false;
      for (const Method m : {Method::kGlr, Method::kQmlgl, Method::kVsPf, Method::kRiskDensity,
                             Method::kDiscountedBiub, Method::kMutualIndependence,
                             Method::kMaxCircle, Method::kNoop}) {
        if (token == method_name(m)) {
          out.push_back(m);
          found = true;
          break;
        }
      }
      if (!found) {
        throw ConfigError("unknown method '" + std::string(token) +
                          "' (expected glr, qmlgl, vspf, riskdensity, dbiub, mi, maxcircle)");
      }
    }
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

MethodOutput run_method(Method method, const FittedScenario& s, const HarnessConfig& config) {
  const auto rng_for = [&] {
    return Rng(derive_seed(derive_seed(config.seed, stable_hash(s.id)),
                           static_cast<std::uint64_t>(method)));
  };
  switch (method) {
    case Method::kGlr: {
      const RiskBreakdown r = estimate(s.ego, s.target, config.glr);
      return {r.total_probability, r.saturated};
    }
    case Method::kQmlgl: {
      Rng rng = rng_for();
      const RiskBreakdown r = qmlgl(s.ego, s.target, config.glr, config.baselines, rng);
      return {r.total_probability, r.saturated};
    }
    case Method::kVsPf: {
      Rng rng = rng_for();
      return {vs_pf(s.ego, s.target, config.glr, config.baselines, rng), false};
    }
    case Method::kRiskDensity:
      return {risk_density(s.ego, s.target, config.glr, config.baselines), false};
    case Method::kDiscountedBiub:
      return {discounted_biub(s.ego, s.target, config.glr, config.baselines), false};
    case Method::kMutualIndependence:
      return {mutual_independence(s.ego, s.target, config.glr, config.baselines), false};
    case Method::kMaxCircle:
      return {max_circle(s.ego, s.target, config.glr, config.baselines), false};
    case Method::kNoop:
      return {0.0, false};
  }
  throw InvalidArgument("run_method: unknown method");
}

GroundTruthCache load_ground_truth(const std::filesystem::path& path) {
  GroundTruthCache cache;
  if (!std::filesystem::exists(path)) {
    return cache;
  }
  std::ifstream in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(path.string() + ": ground-truth cache must be an object");
  }
  for (const auto& [id, entry] : doc.items()) {
    try {
      GroundTruthEntry e;
      e.probability = entry.at("probability").get<double>();
      e.colliding_count = entry.at("colliding_count").get<int>();
      e.sample_count = entry.at("sample_count").get<int>();
      e.seed = entry.at("seed").get<std::uint64_t>();
      e.config_hash = entry.at("config_hash").get<std::string>();
      cache.emplace(id, std::move(e));
    } catch (const json::exception& ex) {
      throw ParseError(path.string() + ": entry '" + id + "': " + ex.what());
    }
  }
  return cache;
}

void save_ground_truth(const GroundTruthCache& cache, const std::filesystem::path& path) {
  ordered_json doc = ordered_json::object();
  for (const auto& [id, e] : cache) {
    doc[id] = {{"probability", e.probability},
               {"colliding_count", e.colliding_count},
               {"sample_count", e.sample_count},
               {"seed", e.seed},
               {"config_hash", e.config_hash}};
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << doc.dump(2) << '\n';
}

GroundTruthEntry compute_ground_truth(const FittedScenario& scenario,
                                      const HarnessConfig& config) {
  OracleConfig oc = config.oracle;
  oc.seed = oracle_seed_for(config, scenario.id);
  const OracleResult r = ground_truth(scenario.ego, scenario.target, config.glr, oc);
  return {r.probability, r.colliding_count, r.sample_count, oc.seed, oracle_config_hash(config)};
}

namespace {

// Calls fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

OracleRunStats update_ground_truth(
    const std::vector<FittedScenario>& scenarios, const HarnessConfig& config,
    GroundTruthCache& cache, int jobs,
    const std::function<void(const FittedScenario&, const GroundTruthEntry&, bool)>& on_result) {
  const std::string hash = oracle_config_hash(config);
  std::vector<std::size_t> todo;
  OracleRunStats stats;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto it = cache.find(scenarios[i].id);
    if (it != cache.end() && it->second.config_hash == hash) {
      ++stats.reused;
      if (on_result) {
        on_result(scenarios[i], it->second, false);
      }
    } else {
      todo.push_back(i);
    }
  }
  std::vector<GroundTruthEntry> fresh(todo.size());
  parallel_for(todo.size(), jobs,
               [&](std::size_t k) { fresh[k] = compute_ground_truth(scenarios[todo[k]], config); });
  for (std::size_t k = 0; k < todo.size(); ++k) {
    cache[scenarios[todo[k]].id] = fresh[k];
    ++stats.computed;
    if (on_result) {
      on_result(scenarios[todo[k]], fresh[k], true);
    }
  }
  return stats;
}

void summarize_errors(const BenchReport& report, std::size_t method_index, double& mae,
                      double& mae_std) {
  const auto n = static_cast<double>(report.matrix.size());
  double sum = 0.0;
  for (const ScenarioRow& row : report.matrix) {
    sum += std::abs(row.estimates[method_index] - row.ground_truth);
  }
  mae = report.matrix.empty() ? 0.0 : sum / n;
  double sq = 0.0;
  for (const ScenarioRow& row : report.matrix) {
    const double d = std::abs(row.estimates[method_index] - row.ground_truth) - mae;
    sq += d * d;
  }
  mae_std = report.matrix.empty() ? 0.0 : std::sqrt(sq / n);
}

BenchReport evaluate(const std::vector<FittedScenario>& scenarios, const GroundTruthCache& cache,
                     const std::vector<Method>& methods, const HarnessConfig& config, int jobs) {
  config.validate();
  const std::string hash = oracle_config_hash(config);
  std::string missing;
  for (const FittedScenario& s : scenarios) {
    const auto it = cache.find(s.id);
    if (it == cache.end() || it->second.config_hash != hash) {
      missing += (missing.empty() ? "" : ", ") + s.id;
    }
  }
  if (!missing.empty()) {
    throw ValidationError("no ground truth for the current oracle config: " + missing);
  }

  // Scenarios sorted by id so every output is independent of input order.
  std::vector<std::size_t> order(scenarios.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scenarios[a].id < scenarios[b].id; });

  BenchReport report;
  report.methods = methods;
  report.config_json = config_to_json(config);
  report.matrix.resize(scenarios.size());
  std::vector<std::vector<double>> runtimes(methods.size(),
                                            std::vector<double>(scenarios.size(), 0.0));
  std::vector<std::vector<char>> saturated(methods.size(),
                                           std::vector<char>(scenarios.size(), 0));

  parallel_for(order.size(), jobs, [&](std::size_t row) {
    const FittedScenario& s = scenarios[order[row]];
    ScenarioRow& out = report.matrix[row];
    out.scenario_id = s.id;
    out.ground_truth = cache.at(s.id).probability;
    out.estimates.resize(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto start = std::chrono::steady_clock::now();
      const MethodOutput r = run_method(methods[m], s, config);
      const auto stop = std::chrono::steady_clock::now();
      out.estimates[m] = r.probability;
      saturated[m][row] = r.saturated ? 1 : 0;
      runtimes[m][row] = std::chrono::duration<double, std::micro>(stop - start).count();
    }
  });

  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodSummary ms;
    ms.method = methods[m];
    summarize_errors(report, m, ms.mae, ms.mae_std);
    std::vector<double> t = runtimes[m];
    if (!t.empty()) {
      double sum = 0.0;
      for (const double v : t) {
        sum += v;
      }
      ms.mean_runtime_us = sum / static_cast<double>(t.size());
      std::sort(t.begin(), t.end());
      const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(t.size())));
      ms.p99_runtime_us = t[std::max<std::size_t>(rank, 1) - 1];
    }
    ms.loop_rate_hz = ms.mean_runtime_us > 0.0 ? 1e6 / ms.mean_runtime_us
                                               : std::numeric_limits<double>::infinity();
    for (const char c : saturated[m]) {
      ms.saturation_count += c;
    }
    report.summary.push_back(ms);
  }
  return report;
}

std::string summary_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "method,mae,mae_std,mean_runtime_us,p99_runtime_us,loop_rate_hz,saturation_count\n";
  for (const MethodSummary& s : report.summary) {
    os << method_name(s.method) << ',' << format_double(s.mae) << ','
       << format_double(s.mae_std) << ',' << format_double(s.mean_runtime_us) << ','
       << format_double(s.p99_runtime_us) << ',' << format_double(s.loop_rate_hz) << ','
       << s.saturation_count << '\n';
  }
  return os.str();
}

std::string matrix_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "scenario_id,ground_truth";
  for (const Method m : report.methods) {
    os << ',' << method_name(m);
  }
  os << '\n';
  for (const ScenarioRow& row : report.matrix) {
    os << row.scenario_id << ',' << format_double(row.ground_truth);
    for (const double e : row.estimates) {
      os << ',' << format_double(e);
    }
    os << '\n';
  }
  return os.str();
}

std::string summary_table(const BenchReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "method" << std::right << std::setw(16) << "MAE +/- sd"
     << std::setw(14) << "mean (us)" << std::setw(14) << "p99 (us)" << std::setw(14)
     << "rate (Hz)" << std::setw(10) << "saturated" << '\n';
  for (const MethodSummary& s : report.summary) {
    std::ostringstream mae;
    mae << std::fixed << std::setprecision(3) << s.mae << " +/- " << s.mae_std;
    os << std::left << std::setw(14) << method_name(s.method) << std::right << std::setw(16)
       << mae.str() << std::fixed << std::setprecision(1) << std::setw(14) << s.mean_runtime_us
       << std::setw(14) << s.p99_runtime_us << std::setw(14) << s.loop_rate_hz << std::setw(10)
       << s.saturation_count << '\n';
    os.unsetf(std::ios::fixed);
  }
  os << "scenarios: " << report.matrix.size() << '\n';
  return os.str();
}

void write_report(const BenchReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [&dir](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + (dir / name).string());
    }
    out << text;
  };
  write("summary.csv", summary_csv(report));
  write("scenarios.csv", matrix_csv(report));
  write("summary.txt", summary_table(report));
  write("config.json", report.config_json + "\n");
}

namespace {

// Monte Carlo Pcol at arbitrary times from one set of coherent samples.
std::vector<double> sampled_pcol(const FittedScenario& s, const std::vector<double>& times,
                                 const HarnessConfig& config, Rng& rng) {
  std::vector<OrientedRect> ego_rects;
  for (const double t : times) {
    ego_rects.push_back(ego_rect_at(s.ego, t, config.glr));
  }
  std::vector<int> hits(times.size(), 0);
  for (int k = 0; k < config.baselines.qmlgl_samples; ++k) {
    const BezierCurve sample = sample_trajectory(s.target, rng);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const OrientedRect r =
          vehicle_rect(sample.evaluate(times[i]), heading(sample, times[i]), config.glr);
      hits[i] += rects_intersect(ego_rects[i], r) ? 1 : 0;
    }
  }
  std::vector<double> out;
  for (const int h : hits) {
    out.push_back(static_cast<double>(h) / config.baselines.qmlgl_samples);
  }
  return out;
}

}  // namespace

std::string inspect_curves(const FittedScenario& s, Method method, const HarnessConfig& config) {
  if (method != Method::kGlr && method != Method::kQmlgl) {
    throw ConfigError("inspect supports glr and qmlgl only");
  }
  config.validate();
  const double clip = config.glr.pcol_clip;
  const double inf = std::numeric_limits<double>::infinity();

  RiskBreakdown nodes;
  std::vector<double> grid = uniform_grid(config.glr.horizon, kInspectGridSize - 1);
  grid.push_back(config.glr.horizon);
  std::vector<double> grid_pcol;
  if (method == Method::kGlr) {
    nodes = estimate(s.ego, s.target, config.glr);
    for (const double t : grid) {
      grid_pcol.push_back(instantaneous_pcol_at(s.ego, s.target, t, config.glr));
    }
  } else {
    Rng rng(derive_seed(derive_seed(config.seed, stable_hash(s.id)),
                        static_cast<std::uint64_t>(Method::kQmlgl)));
    nodes = qmlgl(s.ego, s.target, config.glr, config.baselines, rng);
    Rng grid_rng(derive_seed(derive_seed(config.seed, stable_hash(s.id)), 0x9f1d));
    grid_pcol = sampled_pcol(s, grid, config, grid_rng);
  }

  std::ostringstream os;
  os << "# method=" << method_name(method) << '\n';
  os << "# scenario=" << s.id << '\n';
  os << "# saturated=" << (nodes.saturated ? "true" : "false") << '\n';
  os << "# total_probability=" << format_double(nodes.total_probability) << '\n';
  os << "source,t,pcol,hazard,cumulative_hazard\n";

  const QuadRule& rule2 = gauss_legendre_rule(config.glr.n2);
  double cumulative = 0.0;
  bool hit = false;
  for (std::size_t i = 0; i < nodes.node_times.size(); ++i) {
    hit = hit || saturates(nodes.node_pcol[i], clip);
    cumulative += 0.5 * config.glr.horizon * rule2.weights()[i] * nodes.node_hazard[i];
    os << "node," << format_double(nodes.node_times[i]) << ',' << format_double(nodes.node_pcol[i])
       << ',' << format_double(nodes.node_hazard[i]) << ',' << format_double(hit ? inf : cumulative)
       << '\n';
  }

  cumulative = 0.0;
  hit = false;
  double prev_h = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double h = hazard(grid_pcol[k], clip);
    hit = hit || saturates(grid_pcol[k], clip);
    if (k > 0) {
      cumulative += 0.5 * (grid[k] - grid[k - 1]) * (h + prev_h);
    }
    prev_h = h;
    os << "grid," << format_double(grid[k]) << ',' << format_double(grid_pcol[k]) << ','
       << format_double(h) << ',' << format_double(hit ? inf : cumulative) << '\n';
  }
  return os.str();
}

}  // namespace glr
