// Serial vs OpenMP timings of the data-parallel kernels.
#include <benchmark/benchmark.h>

#include "caustica/canonical.hpp"
#include "caustica/cutoff.hpp"
#include "caustica/examples.hpp"
#include "caustica/field.hpp"
#include "caustica/oscillatory.hpp"
#include "caustica/quadrature.hpp"

using namespace caustica;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_TensorQuadrature(benchmark::State& state) {
  const std::vector<AxisSpec> axes{{0.0, 2 * kPi, Rule::Periodic}, {-1.0, 2.0, Rule::GaussLegendre}};
  auto f = [](const Vec& t) { return std::exp(kI * (40.0 * std::sin(t[0]) * t[1])); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_fixed(axes, f, 512, mode(state)));
}
BENCHMARK(BM_TensorQuadrature)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_RadialNewPoint(benchmark::State& state) {
  const NewSingularChart nc = radial_new_chart();
  const Amplitude one = [](const Vec&) { return cplx(1.0); };
  const Vec x{{0.4, -0.3, 0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_new(nc, one, x, 0.05, {}, mode(state)));
}
BENCHMARK(BM_RadialNewPoint)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_BeamGrid(benchmark::State& state) {
  const BeamParams bp;
  const NewSingularChart nc = beam_new_chart(bp);
  const Amplitude a = beam_amplitude(bp, [](double al, double ph) { return cplx(std::exp(-al * al / 2 - ph * ph / 2)); });
  const GridSpec g{{-1.0, -1.0, 0.0}, {1.0, 1.0, 0.0}, {16, 16, 1}};
  // inner quadrature serial so the grid loop is the only parallel level
  const QuadratureSpec q;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        evaluate_grid(g, 0.05, [&](const Vec& x) { return evaluate_new(nc, a, x, 0.05, q, Exec::Serial); }, mode(state)));
}
BENCHMARK(BM_BeamGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_AiryBrute(benchmark::State& state) {
  const PhaseFunction f = airy_phase();
  const PhaseAmplitude cap = [](const Vec&, const Vec& t) { return cplx(bump(t[0], 2.0, 3.5)); };
  for (auto _ : state) benchmark::DoNotOptimize(brute_quadrature(f, cap, Vec::Constant(1, -1.0), 0.01, {}, mode(state)));
}
BENCHMARK(BM_AiryBrute)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
