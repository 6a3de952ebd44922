#include <benchmark/benchmark.h>

#include <memory>

#include "fpsi/assembly.hpp"
#include "fpsi/coupling.hpp"

using namespace fpsi;

namespace {

std::shared_ptr<Mesh2D> unit_mesh(double h) {
    return std::make_shared<Mesh2D>(build_rect_mesh(Rect{0, 1, 0, 1}, h, {}));
}

void BM_StiffnessEps(benchmark::State& state, Execution exec) {
    const auto mesh = unit_mesh(1.0 / static_cast<double>(state.range(0)));
    const FeSpace V(mesh, ElementKind::P2_vector);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(FormKind::stiffness_eps, V, V, 1.0, VolumeLocus{}, exec));
    state.counters["cells"] = static_cast<double>(mesh->triangle_count());
}

void BM_Divergence(benchmark::State& state, Execution exec) {
    const auto mesh = unit_mesh(1.0 / static_cast<double>(state.range(0)));
    const FeSpace V(mesh, ElementKind::P2_vector), Q(mesh, ElementKind::P1_scalar);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(FormKind::divergence, V, Q, 1.0, VolumeLocus{}, exec));
}

void BM_DecoupledStep(benchmark::State& state, Execution exec) {
    const CoupledSolver solver(manufactured_scenario(1.0, 1.0 / static_cast<double>(state.range(0))));
    auto [s, r] = solver.initialize();
    for (auto _ : state) benchmark::DoNotOptimize(solver.advance(s, r, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_StiffnessEps, serial, Execution::serial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_StiffnessEps, parallel, Execution::parallel)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_Divergence, serial, Execution::serial)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_Divergence, parallel, Execution::parallel)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_DecoupledStep, serial, Execution::serial)->Arg(16);
BENCHMARK_CAPTURE(BM_DecoupledStep, parallel, Execution::parallel)->Arg(16);

BENCHMARK_MAIN();
