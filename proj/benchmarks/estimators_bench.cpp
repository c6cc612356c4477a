#include <benchmark/benchmark.h>

#include <vector>

#include "glr/baselines.hpp"
#include "glr/bench.hpp"
#include "glr/estimator.hpp"
#include "glr/oracle.hpp"
#include "glr/scenario.hpp"

namespace {

const std::vector<glr::FittedScenario>& scenarios() {
  static const std::vector<glr::FittedScenario> fitted = [] {
    glr::GeneratorSpec spec;
    spec.family = glr::ScenarioFamily::kLaneChangeCut;
    spec.count = 8;
    std::vector<glr::FittedScenario> out;
    for (const auto& s : glr::generate(spec)) out.push_back(glr::fit_scenario(s, glr::FitConfig{}));
    return out;
  }();
  return fitted;
}

void BM_GaussLegendreBuild(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(glr::compute_gauss_legendre_rule(order));
  }
}
BENCHMARK(BM_GaussLegendreBuild)->Arg(12)->Arg(24)->Arg(128);

void BM_InstantaneousPcol(benchmark::State& state) {
  const glr::GlrConfig cfg;
  const auto& s = scenarios().front();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(glr::instantaneous_pcol_at(s.ego, s.target, t, cfg));
    t = t > 5.9 ? 0.0 : t + 0.01;
  }
}
BENCHMARK(BM_InstantaneousPcol);

void BM_Glr(benchmark::State& state) {
  glr::GlrConfig cfg;
  cfg.n1 = static_cast<int>(state.range(0));
  cfg.n2 = static_cast<int>(state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = scenarios()[i++ % scenarios().size()];
    benchmark::DoNotOptimize(glr::estimate(s.ego, s.target, cfg).total_probability);
  }
}
BENCHMARK(BM_Glr)->Args({12, 24})->Args({6, 12})->Args({16, 32})->Unit(benchmark::kMicrosecond);

void BM_Method(benchmark::State& state) {
  const auto method = static_cast<glr::Method>(state.range(0));
  state.SetLabel(std::string(glr::method_name(method)));
  const glr::HarnessConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = scenarios()[i++ % scenarios().size()];
    benchmark::DoNotOptimize(glr::run_method(method, s, cfg).probability);
  }
}
BENCHMARK(BM_Method)
    ->DenseRange(0, 6)
    ->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& state) {
  const glr::GlrConfig cfg;
  glr::OracleConfig oc;
  oc.sample_count = static_cast<int>(state.range(0));
  const auto& s = scenarios().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(glr::ground_truth(s.ego, s.target, cfg, oc).probability);
  }
}
BENCHMARK(BM_Oracle)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
