#pragma once

#include "slthermo/config.hpp"
#include "slthermo/postprocess.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace slthermo {

/// Everything produced by one thermal + mechanical solve. Owns the mesh and
/// spaces the fields refer to.
struct Simulation {
  std::unique_ptr<CrackedMesh> mesh;
  std::unique_ptr<FESpace> scalar_space;
  std::unique_ptr<FESpace> vector_space;
  std::unique_ptr<MaterialParams> material;
  FEField temperature;
  FEField displacement;
  SolveReport report;
  /// Empty when recovery failed (see recovery_error).
  FieldMap fields;
  std::string recovery_error;
};

/// Thermal solve, Picard mechanical solve and field recovery for a config.
/// Recovery is skipped when the Picard iteration did not converge.
Simulation simulate(const RunConfig& config, Execution execution = Execution::parallel);

enum ExitStatus : int { kExitSuccess = 0, kExitError = 1, kExitNotConverged = 2 };

/// Solves, writes the configured outputs and prints a summary block.
int run(const RunConfig& config, std::ostream& log);

/// One full solve per value on the same mesh, rows in input order. Failed or
/// unconverged solves are flagged in their row.
std::vector<SweepRow> run_sweep(const RunConfig& base, SweepParameter parameter, const std::vector<double>& values);

/// True if both headline maxima strictly decrease along the rows.
bool strictly_decreasing(const std::vector<SweepRow>& rows);
/// True if both headline maxima strictly increase along the rows.
bool strictly_increasing(const std::vector<SweepRow>& rows);

struct ReproductionCell {
  std::string name;
  double fiber_angle = 0.0;
  ThermalLoad load = ThermalLoad::constant;
  SweepParameter parameter = SweepParameter::b;
  std::vector<SweepRow> rows;
  bool all_converged = false;
  bool trend_holds = false;
  std::filesystem::path csv_path;
};

struct ReproductionOptions {
  std::filesystem::path output_dir = "reproduction";
  int nx = 32;
  int ny = 32;
  int element_order = 2;
  /// Prescribed top displacement of every scenario.
  double top_uy = kDefaultTopDisplacement;
  /// Picard damping; the a = 0.1 runs oscillate without it.
  double damping = kDefaultDamping;

  static constexpr double kDefaultTopDisplacement = 0.1;
  static constexpr double kDefaultDamping = 0.5;
};

/// Base configuration shared by all reproduction cells.
RunConfig reproduction_base_config(const ReproductionOptions& options);

/// Both fiber orientations x both thermal loads x (b sweep {0, .01, .02, .03}
/// at a = 0.5, a sweep {0.1, 0.5, 1} at b = 0.02); one CSV per cell.
std::vector<ReproductionCell> run_reproduction_suite(const ReproductionOptions& options, std::ostream& log);

}  // namespace slthermo
