#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "glr/baselines.hpp"
#include "glr/estimator.hpp"
#include "glr/oracle.hpp"
#include "glr/scenario.hpp"

namespace glr {

/// How recorded tracks become estimator inputs.
struct FitConfig {
  int ego_degree = 7;
  int target_degree = 7;
  double sigma0 = 0.1;
  double sigma1 = 1.0;
};

/// Every knob of a benchmark run; serialised into each report.
struct HarnessConfig {
  GlrConfig glr;
  BaselineConfig baselines;
  OracleConfig oracle;
  FitConfig fit;
  /// Base seed for the stochastic estimators (VS-PF, QMLGL).
  std::uint64_t seed = 2024;

  void validate() const;
};

std::string config_to_json(const HarnessConfig& config);
/// Keys present in `text` override `base`; unknown keys raise ConfigError.
HarnessConfig config_from_json(std::string_view text, HarnessConfig base = {});
HarnessConfig load_config(const std::filesystem::path& path);

/// Hash of every setting that influences the oracle result.
std::string oracle_config_hash(const HarnessConfig& config);

/// Oracle seed for one scenario: derived from the scenario id, never from
/// the worker that happens to run it.
std::uint64_t oracle_seed_for(const HarnessConfig& config, std::string_view scenario_id);

struct FittedScenario {
  std::string id;
  BezierCurve ego;
  ProbBezierCurve target;
  double ego_fit_rms;
  double target_fit_rms;
};

FittedScenario fit_scenario(const Scenario& scenario, const FitConfig& fit);

enum class Method { kGlr, kQmlgl, kVsPf, kRiskDensity, kDiscountedBiub, kMutualIndependence,
                    kMaxCircle, kNoop };

std::string_view method_name(Method m);
/// Parses a comma-separated list; throws ConfigError on unknown names.
std::vector<Method> parse_methods(std::string_view list);
/// The seven benchmarked methods in report order.
std::vector<Method> all_methods();

struct MethodOutput {
  double probability = 0.0;
  bool saturated = false;
};

/// Runs one estimator. Stochastic methods draw from an engine seeded by
/// (config.seed, scenario id, method).
MethodOutput run_method(Method method, const FittedScenario& scenario,
                        const HarnessConfig& config);

struct GroundTruthEntry {
  double probability = 0.0;
  int colliding_count = 0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
};

using GroundTruthCache = std::map<std::string, GroundTruthEntry>;

/// Missing file yields an empty cache.
GroundTruthCache load_ground_truth(const std::filesystem::path& path);
void save_ground_truth(const GroundTruthCache& cache, const std::filesystem::path& path);

GroundTruthEntry compute_ground_truth(const FittedScenario& scenario,
                                      const HarnessConfig& config);

struct OracleRunStats {
  int computed = 0;
  int reused = 0;
};

/// Fills `cache` for every scenario lacking an entry with the current config
/// hash. Work is spread over `jobs` threads; entries do not depend on it.
OracleRunStats update_ground_truth(const std::vector<FittedScenario>& scenarios,
                                   const HarnessConfig& config, GroundTruthCache& cache, int jobs,
                                   const std::function<void(const FittedScenario&,
                                                            const GroundTruthEntry&, bool)>&
                                       on_result = {});

struct MethodSummary {
  Method method;
  double mae = 0.0;
  double mae_std = 0.0;
  double mean_runtime_us = 0.0;
  double p99_runtime_us = 0.0;
  double loop_rate_hz = 0.0;
  int saturation_count = 0;
};

struct ScenarioRow {
  std::string scenario_id;
  double ground_truth = 0.0;
  std::vector<double> estimates;  // aligned with BenchReport::methods
};

struct BenchReport {
  std::vector<Method> methods;
  std::vector<MethodSummary> summary;
  std::vector<ScenarioRow> matrix;
  std::string config_json;
};

/// Runs each method over each scenario, timing only the estimator call.
/// Throws ValidationError naming scenario ids without current ground truth.
BenchReport evaluate(const std::vector<FittedScenario>& scenarios, const GroundTruthCache& cache,
                     const std::vector<Method>& methods, const HarnessConfig& config, int jobs = 1);

/// Recomputes mae / mae_std from the matrix (used to cross-check summaries).
void summarize_errors(const BenchReport& report, std::size_t method_index, double& mae,
                      double& mae_std);

std::string summary_csv(const BenchReport& report);
std::string matrix_csv(const BenchReport& report);
std::string summary_table(const BenchReport& report);
/// Writes summary.csv, scenarios.csv, summary.txt and config.json into `dir`.
void write_report(const BenchReport& report, const std::filesystem::path& dir);

/// Dense uniform grid size used by inspect.
inline constexpr int kInspectGridSize = 512;

/// Curve CSV for one scenario: Stage-2 node rows and a dense uniform grid,
/// columns source,t,pcol,hazard,cumulative_hazard. Cumulative hazard becomes
/// inf from the first saturated row onward.
std::string inspect_curves(const FittedScenario& scenario, Method method,
                           const HarnessConfig& config);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace glr
