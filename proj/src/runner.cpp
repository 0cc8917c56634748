#include "slthermo/runner.hpp"

#include <filesystem>
#include <numbers>
#include <ostream>
#include <set>

namespace slthermo {

Simulation simulate(const RunConfig& config, Execution execution) {
  validate(config);
  Simulation sim;
  sim.mesh = std::make_unique<CrackedMesh>(build_grid(config.mesh.nx, config.mesh.ny, config.mesh.crack_or_none()));
  sim.scalar_space = std::make_unique<FESpace>(*sim.mesh, config.element_order, 1);
  sim.vector_space = std::make_unique<FESpace>(*sim.mesh, config.element_order, 2);
  sim.material = std::make_unique<MaterialParams>(config.material);

  ScalarFunction source;
  if (config.heat_source != 0.0) {
    source = [q = config.heat_source](double, double) { return q; };
  }
  AssemblyOptions options;
  options.execution = execution;
  sim.temperature = solve_thermal(*sim.scalar_space, *sim.material, source, config.thermal_bc, options);
  PicardResult result =
      picard_solve(*sim.vector_space, *sim.material, sim.temperature, config.mechanical_bc, config.picard, options);
  sim.displacement = std::move(result.displacement);
  sim.report = std::move(result.report);
  try {
    sim.fields = recover_fields(sim.displacement, sim.temperature, *sim.material, {execution});
  } catch (const InadmissibleStrain& err) {
    sim.recovery_error = err.what();
  }
  return sim;
}

namespace {

void set_parameter(RunConfig& config, SweepParameter parameter, double value) {
  if (parameter == SweepParameter::a) config.material.a = value;
  else config.material.b = value;
}

FieldMap selected_fields(const FieldMap& fields, const std::vector<std::string>& names) {
  if (names.empty()) return fields;
  FieldMap out;
  for (const auto& name : names) {
    const auto it = fields.find(name);
    if (it == fields.end()) throw std::invalid_argument("unknown output field '" + name + "'");
    out.insert(*it);
  }
  return out;
}

void print_summary(const Simulation& sim, std::ostream& log) {
  const SolveReport& r = sim.report;
  log << "picard: " << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations << " iterations\n";
  log << "picard: clamp events " << r.clamp_events << '\n';
  log << "picard: increments";
  for (double inc : r.increments) log << ' ' << format_double(inc);
  log << '\n';
  if (!sim.recovery_error.empty()) {
    log << "recovery failed: " << sim.recovery_error << '\n';
    return;
  }
  const SweepRow row = summarize(sim.fields, r);
  log << "max |stress| " << format_double(row.max_stress_norm) << " at node "
      << argmax_node(sim.fields.at("stress_norm")) << '\n';
  log << "max |strain| " << format_double(row.max_strain_norm) << " at node "
      << argmax_node(sim.fields.at("strain_norm")) << '\n';
  log << "principal stress [" << format_double(row.min_principal_stress) << ", "
      << format_double(row.max_principal_stress) << "]\n";
  log << "principal strain [" << format_double(row.min_principal_strain) << ", "
      << format_double(row.max_principal_strain) << "]\n";
  if (sim.mesh->cracked()) log << "crack tip node " << sim.mesh->tip_node << '\n';
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepParameter parameter, const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    RunConfig config = base;
    config.sweep.reset();
    set_parameter(config, parameter, value);
    SweepRow row;
    try {
      const Simulation sim = simulate(config);
      if (sim.recovery_error.empty()) {
        row = summarize(sim.fields, sim.report);
      } else {
        row.converged = sim.report.converged;
        row.iterations = sim.report.iterations;
        row.clamp_events = sim.report.clamp_events;
        row.error = sim.recovery_error;
      }
    } catch (const std::exception& err) {
      row.error = err.what();
    }
    row.parameter = std::string(to_string(parameter));
    row.value = value;
    rows.push_back(std::move(row));
  }
  return rows;
}

bool strictly_decreasing(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].max_stress_norm < rows[i - 1].max_stress_norm)) return false;
    if (!(rows[i].max_strain_norm < rows[i - 1].max_strain_norm)) return false;
  }
  return true;
}

bool strictly_increasing(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].max_stress_norm > rows[i - 1].max_stress_norm)) return false;
    if (!(rows[i].max_strain_norm > rows[i - 1].max_strain_norm)) return false;
  }
  return true;
}

int run(const RunConfig& config, std::ostream& log) {
  validate(config);
  if (config.sweep) {
    const auto rows = run_sweep(config, config.sweep->parameter, config.sweep->values);
    bool ok = true;
    for (const auto& row : rows) {
      log << "sweep " << row.parameter << " = " << format_double(row.value) << ": "
          << (row.error.empty() ? (row.converged ? "converged" : "NOT converged") : "FAILED: " + row.error)
          << ", iterations " << row.iterations << ", max |stress| " << format_double(row.max_stress_norm)
          << ", max |strain| " << format_double(row.max_strain_norm) << '\n';
      ok = ok && row.converged && row.error.empty();
    }
    if (!config.outputs.csv_path.empty()) write_csv(rows, config.outputs.csv_path);
    return ok ? kExitSuccess : kExitNotConverged;
  }

  const Simulation sim = simulate(config);
  print_summary(sim, log);
  if (!sim.recovery_error.empty()) return kExitError;
  if (!config.outputs.vtk_path.empty()) {
    write_vtk(selected_fields(sim.fields, config.outputs.fields), *sim.mesh, config.outputs.vtk_path);
  }
  if (!config.outputs.csv_path.empty()) {
    SweepRow row = summarize(sim.fields, sim.report);
    row.parameter = "b";
    row.value = config.material.b;
    write_csv(std::vector<SweepRow>{row}, config.outputs.csv_path);
  }
  if (!config.outputs.profile_path.empty() && sim.mesh->cracked()) {
    write_csv(crack_opening_profile(sim.displacement, *sim.mesh), config.outputs.profile_path);
  }
  return sim.report.converged ? kExitSuccess : kExitNotConverged;
}

RunConfig reproduction_base_config(const ReproductionOptions& options) {
  RunConfig config;
  config.mesh.nx = options.nx;
  config.mesh.ny = options.ny;
  config.element_order = options.element_order;
  config.mechanical_bc.top_uy = options.top_uy;
  config.picard.damping = options.damping;
  return config;
}

std::vector<ReproductionCell> run_reproduction_suite(const ReproductionOptions& options, std::ostream& log) {
  struct Orientation {
    const char* name;
    double angle;
  };
  const Orientation orientations[] = {{"fiber_e1", 0.0}, {"fiber_e2", std::numbers::pi / 2}};
  const ThermalLoad loads[] = {ThermalLoad::constant, ThermalLoad::parabolic};

  std::filesystem::create_directories(options.output_dir);
  std::vector<ReproductionCell> cells;
  for (const auto& orientation : orientations) {
    for (ThermalLoad load : loads) {
      for (SweepParameter parameter : {SweepParameter::b, SweepParameter::a}) {
        RunConfig config = reproduction_base_config(options);
        config.material.fiber_angle = orientation.angle;
        config.thermal_bc.kind = load;
        std::vector<double> values;
        if (parameter == SweepParameter::b) {
          config.material.a = 0.5;
          values = {0.0, 0.01, 0.02, 0.03};
        } else {
          config.material.b = 0.02;
          values = {0.1, 0.5, 1.0};
        }

        ReproductionCell cell;
        cell.name = std::string(orientation.name) + (load == ThermalLoad::constant ? "_constant" : "_parabolic") +
                    "_" + std::string(to_string(parameter)) + "_sweep";
        cell.fiber_angle = orientation.angle;
        cell.load = load;
        cell.parameter = parameter;
        cell.rows = run_sweep(config, parameter, values);
        cell.all_converged = true;
        for (const auto& row : cell.rows) cell.all_converged = cell.all_converged && row.converged && row.error.empty();
        cell.trend_holds = cell.all_converged &&
                           (parameter == SweepParameter::b ? strictly_decreasing(cell.rows) : strictly_increasing(cell.rows));
        cell.csv_path = options.output_dir / (cell.name + ".csv");
        write_csv(cell.rows, cell.csv_path);
        log << (cell.trend_holds ? "PASS " : "FAIL ") << cell.name << " (" << cell.rows.size() << " runs"
            << (cell.all_converged ? "" : ", some not converged") << ") -> " << cell.csv_path.string() << '\n';
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace slthermo
