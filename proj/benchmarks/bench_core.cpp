// bench_core.cpp — microbenchmarks for the hot paths: diagonalization, operator
// trig, Liouvillian assembly, steady state and the resolvent spectrum
#include "uscqed/spectra.hpp"

#include <benchmark/benchmark.h>

using namespace uscqed;

namespace {

ModelConfig qrm_cfg(int n_fock) {
    ModelConfig cfg;
    cfg.model = ModelKind::Qrm;
    cfg.g_a = 0.5;
    cfg.n_fock = n_fock;
    cfg.bath_cav = cfg.bath_atom = BathKind::Flat;
    return cfg;
}

ModelConfig gdm_cfg(int n_fock) {
    ModelConfig cfg;
    cfg.model = ModelKind::Gdm;
    cfg.g_a = cfg.g_b = 0.5;
    cfg.omega_b = 0.75;
    cfg.gamma_b = cfg.gamma_a;
    cfg.n_fock = n_fock;
    return cfg;
}

void BM_DiagonalizeQrm(benchmark::State& state) {
    const auto model = build_model(qrm_cfg(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize(model, 12));
}

void BM_DiagonalizeGdm(benchmark::State& state) {
    const auto model = build_model(gdm_cfg(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize(model, 12));
}

void BM_QuadratureTrig(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(quadrature_trig(0.5, static_cast<int>(state.range(0))));
}

void BM_AssembleLiouvillian(benchmark::State& state) {
    const auto model = build_model(gdm_cfg(100));
    const auto basis = diagonalize(model, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_liouvillian(model, basis));
}

void BM_SteadyState(benchmark::State& state) {
    const auto gme = assemble_liouvillian(build_model(gdm_cfg(100)));
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(gme.liouvillian));
}

void BM_SpectrumQrt400(benchmark::State& state) {
    const auto gme = assemble_liouvillian(build_model(gdm_cfg(100)));
    const Matrix rho = steady_state(gme.liouvillian);
    const Eigen::VectorXd grid = default_omega_grid();
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum_qrt(gme.liouvillian, rho, gme.cav, grid));
}

void BM_FullGdmPoint(benchmark::State& state) {
    // one omega_b grid point of the Fig. 6 sweep, end to end
    const ModelConfig cfg = gdm_cfg(static_cast<int>(state.range(0)));
    const Eigen::VectorXd grid = default_omega_grid();
    for (auto _ : state) {
        const auto model = build_model(cfg);
        const auto gme = assemble_liouvillian(model);
        const Matrix rho = steady_state(gme.liouvillian);
        benchmark::DoNotOptimize(spectrum_qrt(gme.liouvillian, rho, gme.cav, grid));
    }
}

}  // namespace

BENCHMARK(BM_DiagonalizeQrm)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiagonalizeGdm)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureTrig)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleLiouvillian)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumQrt400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullGdmPoint)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
