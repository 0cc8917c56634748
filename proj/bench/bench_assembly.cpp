// Serial reference vs OpenMP element loops for the expensive kernels.
#include "slthermo/assembly.hpp"
#include "slthermo/postprocess.hpp"
#include "slthermo/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace slthermo;

struct Fixture {
  explicit Fixture(int n)
      : mesh(build_cracked_grid(n, n, CrackSpec{})),
        scalar(mesh, 2, 1),
        vector(mesh, 2, 2),
        material(MaterialConstants{}),
        theta(FEField::interpolate(scalar, [](double x, double) { return 400.0 * x * (1.0 - x); })),
        u(FEField::interpolate_vector(vector, [](double x, double y) { return Eigen::Vector2d(0.01 * y, 0.02 * x * y); })) {}

  CrackedMesh mesh;
  FESpace scalar;
  FESpace vector;
  MaterialParams material;
  FEField theta;
  FEField u;
};

void BM_MechanicalAssembly(benchmark::State& state, Execution execution) {
  const Fixture f(static_cast<int>(state.range(0)));
  AssemblyOptions options;
  options.execution = execution;
  for (auto _ : state) {
    LinearSystem system = assemble_mechanical_raw(f.vector, f.material, f.theta, f.u, options);
    benchmark::DoNotOptimize(system.rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * f.mesh.num_elements());
}

void BM_ThermalAssembly(benchmark::State& state, Execution execution) {
  const Fixture f(static_cast<int>(state.range(0)));
  AssemblyOptions options;
  options.execution = execution;
  for (auto _ : state) {
    LinearSystem system = assemble_thermal_raw(f.scalar, f.material, {}, options);
    benchmark::DoNotOptimize(system.rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * f.mesh.num_elements());
}

void BM_Recovery(benchmark::State& state, Execution execution) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FieldMap fields = recover_fields(f.u, f.theta, f.material, {execution});
    benchmark::DoNotOptimize(fields.size());
  }
  state.SetItemsProcessed(state.iterations() * f.mesh.num_elements());
}

BENCHMARK_CAPTURE(BM_MechanicalAssembly, serial, Execution::serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MechanicalAssembly, parallel, Execution::parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ThermalAssembly, serial, Execution::serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ThermalAssembly, parallel, Execution::parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Recovery, serial, Execution::serial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Recovery, parallel, Execution::parallel)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
