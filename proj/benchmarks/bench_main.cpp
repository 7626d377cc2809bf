#include "combdrive/diagnostics.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace combdrive;

namespace {

CombParams params(int n) {
    CombParams p;
    p.n = n;
    return p;
}

std::shared_ptr<const TensorMesh> mesh_for(int n) {
    return std::make_shared<const TensorMesh>(
        generate_mesh(build_rescaled_domain(params(n)), Refinement{}));
}

void BM_Mesh(benchmark::State &state) {
    const auto d = build_rescaled_domain(params(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_mesh(d, Refinement{}));
}

void BM_Assemble(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto m = mesh_for(n);
    const auto c = AnisotropicCoeffs::rescaled(params(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble(m, c));
    state.counters["nodes"] = static_cast<double>(m->node_count());
}

void BM_Pcg(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto sys = assemble(mesh_for(n), AnisotropicCoeffs::rescaled(params(n)));
    SolverSettings s;
    s.tol = 1e-13;
    int iters = 0;
    for (auto _ : state) {
        std::vector<double> x(sys.A.rows, 0.0);
        iters = pcg(sys.A, sys.rhs, x, s).iterations;
        benchmark::DoNotOptimize(x.data());
    }
    state.counters["dofs"] = static_cast<double>(sys.A.rows);
    state.counters["iterations"] = iters;
}

void BM_ForceVolume(benchmark::State &state) {
    const auto p = params(static_cast<int>(state.range(0)));
    const auto f = solve_rescaled(p, Refinement{});
    const CutoffSpec c(CutoffVariant::TensorLinear, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(force_volume(f, c, p));
}

} // namespace

BENCHMARK(BM_Mesh)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pcg)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForceVolume)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
