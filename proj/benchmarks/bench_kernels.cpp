#include <benchmark/benchmark.h>

#include <vector>

#include "qee/dephasing.hpp"
#include "qee/noise.hpp"
#include "qee/nv_bath.hpp"
#include "qee/protocol.hpp"
#include "qee/rng.hpp"

namespace {

using namespace qee;

std::vector<BathSpin> nv_bath(std::uint64_t seed, double radius_nm) {
  LatticeConfig cfg;
  cfg.seed = seed;
  cfg.bath_radius_nm = radius_nm;
  auto spins = sample_bath(generate_sites(cfg), cfg, gauss_to_tesla(200.0),
                           kGammaCarbon13MHzPerT);
  for (auto& spin : spins) {
    spin = compute_couplings(spin, kGammaElectronGHzPerT, kGammaCarbon13MHzPerT, ContactModel{});
  }
  apply_polarization(spins, 0.9, 1.0);
  return spins;
}

void SpinFactorKernel(benchmark::State& state) {
  const BathSpin spin = [] {
    BathSpin s;
    s.position_nm = Eigen::Vector3d(0.5, 0.2, 0.6);
    s.hyperfine = Eigen::Vector3d(0.8, 0.1, 0.5);
    s.larmor_rad_us = 1.346;
    s.polarization = 1.0;
    return s;
  }();
  double tau = 0.0;
  for (auto _ : state) {
    tau += 0.01;
    benchmark::DoNotOptimize(spin_factor_pair(spin, tau, tau + 0.3));
  }
}
BENCHMARK(SpinFactorKernel);

void ProtocolTraceSweep(benchmark::State& state) {
  const auto bath = nv_bath(41, 4.0);
  GridSpec grid;
  grid.tau_steps = static_cast<int>(state.range(0));
  grid.t_steps = static_cast<int>(state.range(0));
  TraceOptions options;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(protocol_trace(bath, grid, options));
  }
  state.SetItemsProcessed(state.iterations() * grid.points() * bath.size());
}
BENCHMARK(ProtocolTraceSweep)->Args({50, 1})->Args({50, 2})->Args({200, 1})->Args({200, 8})
    ->Unit(benchmark::kMillisecond);

void PropagatorEigendecomposition(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  Rng rng(7);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
  }
  const HermitianOperator h(0.5 * (m + m.adjoint().eval()));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    benchmark::DoNotOptimize(propagator(h, t));
  }
}
BENCHMARK(PropagatorEigendecomposition)->Arg(8)->Arg(32)->Arg(64);

void OuTrajectories(benchmark::State& state) {
  NoiseProcess process;
  process.sigma_rad_us = 0.5;
  process.corr_time_us = 1.0;
  process.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_trajectories(process, 0.05, 20.0, 1000));
  }
  state.SetItemsProcessed(state.iterations() * 1000 * 401);
}
BENCHMARK(OuTrajectories)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
