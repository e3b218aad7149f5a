#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pbounds/fd_solver.hpp"
#include "pbounds/herglotz.hpp"
#include "pbounds/kramers_kronig.hpp"
#include "pbounds/quadrature.hpp"

using namespace pbounds;

namespace {

void BM_QuadraturePeak(benchmark::State& state) {
  const double y = std::pow(10.0, -static_cast<double>(state.range(0)));
  const std::vector<double> br{0.0, 0.5, 1.0};
  for (auto _ : state) {
    auto r = integrate([&](double x) { return y / ((x - 0.5) * (x - 0.5) + y * y); }, br,
                       {.abs_tol = 1e-10, .rel_tol = 0.0, .max_panels = 100000});
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_QuadraturePeak)->DenseRange(2, 6, 2);

void BM_SumRuleUniform(benchmark::State& state) {
  const DispersionModel f(LossyLorentz{1.0, {{1.0, 1.0, 0.2}}});
  const FrequencyBand band = FrequencyBand::from_squared(0.25, 2.25);
  for (auto _ : state) benchmark::DoNotOptimize(sum_rule_integral(f, Measure::uniform(0.5), band).integral_value);
}
BENCHMARK(BM_SumRuleUniform)->Unit(benchmark::kMillisecond);

void BM_SumRuleDirac(benchmark::State& state) {
  const DispersionModel f(LossyDrude{1.0, 1.0, 0.0});
  const FrequencyBand band = FrequencyBand::from_squared(0.25, 2.25);
  for (auto _ : state) benchmark::DoNotOptimize(sum_rule_integral(f, Measure::dirac(0.0), band).integral_value);
}
BENCHMARK(BM_SumRuleDirac)->Unit(benchmark::kMillisecond);

void BM_KramersKronigPoint(benchmark::State& state) {
  const DispersionModel f(LossyLorentz{1.0, {{1.0, 4.0, 0.2}}});
  const int n = static_cast<int>(state.range(0));
  std::vector<double> w(n), im(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 1e-2 * std::pow(1e4, double(i) / (n - 1));
    im[i] = f(w[i]).imag();
  }
  const KramersKronig kk(w, im, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kk.real_part(2.0).value);
}
BENCHMARK(BM_KramersKronigPoint)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_FdSphere(benchmark::State& state) {
  SceneSpec s;
  s.grid_n = static_cast<int>(state.range(0));
  s.regions.push_back({SphereShape{Eigen::Vector3d::Zero(), 0.25}, 2.0});
  for (auto _ : state) {
    const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitX(), 1.0);
    benchmark::DoNotOptimize(extract_dipole(g, s).p[0]);
  }
}
BENCHMARK(BM_FdSphere)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
