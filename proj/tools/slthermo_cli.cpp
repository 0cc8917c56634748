#include "slthermo/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw slthermo::IoError("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// Turns leftover "--key value" / "--key=value" arguments into config overrides.
std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0) throw CLI::ValidationError("unexpected argument '" + arg + "'");
    const std::string body = arg.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      overrides.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) throw CLI::ValidationError("missing value for '" + arg + "'");
      overrides.emplace_back(body, extras[++i]);
    }
  }
  return overrides;
}

slthermo::RunConfig load(const std::string& path, const std::vector<std::string>& extras) {
  return slthermo::parse_config(path.empty() ? std::string() : read_file(path), parse_overrides(extras));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strain-limiting thermoelastic edge-crack solver"};
  app.require_subcommand(1);

  std::string config_path;
  auto* solve = app.add_subcommand("solve", "Solve one configuration (extra --key value pairs override the file)");
  solve->add_option("config", config_path, "Configuration file")->required();
  solve->allow_extras();

  std::string sweep_param;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Sweep a or b over a list of values");
  sweep->add_option("config", config_path, "Configuration file")->required();
  sweep->add_option("--param", sweep_param, "Swept parameter")->required()->check(CLI::IsMember({"a", "b"}));
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->allow_extras();

  slthermo::ReproductionOptions repro;
  std::string repro_dir = repro.output_dir.string();
  auto* reproduce = app.add_subcommand("reproduce", "Run the fiber x load x (a, b) sweep grid");
  reproduce->add_option("--out", repro_dir, "Output directory for the per-cell CSV files");
  reproduce->add_option("--nx", repro.nx, "Cells in x")->check(CLI::PositiveNumber);
  reproduce->add_option("--ny", repro.ny, "Cells in y")->check(CLI::PositiveNumber);
  reproduce->add_option("--order", repro.element_order, "Element order")->check(CLI::IsMember({1, 2}));
  reproduce->add_option("--top-uy", repro.top_uy, "Prescribed top displacement");
  reproduce->add_option("--damping", repro.damping, "Picard damping in (0, 1]");

  std::string dump_path;
  auto* mesh_dump = app.add_subcommand("mesh-dump", "Write the mesh as a plain-text listing");
  mesh_dump->add_option("config", config_path, "Configuration file")->required();
  mesh_dump->add_option("--out", dump_path, "Output file (default: stdout)");
  mesh_dump->allow_extras();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return slthermo::run(load(config_path, solve->remaining()), std::cout);
    }
    if (sweep->parsed()) {
      slthermo::RunConfig config = load(config_path, sweep->remaining());
      config.sweep = slthermo::SweepConfig{slthermo::parse_sweep_parameter(sweep_param),
                                           slthermo::parse_value_list(sweep_values)};
      slthermo::validate(config);
      return slthermo::run(config, std::cout);
    }
    if (reproduce->parsed()) {
      repro.output_dir = repro_dir;
      const auto cells = slthermo::run_reproduction_suite(repro, std::cout);
      int failed = 0;
      for (const auto& cell : cells) failed += cell.trend_holds ? 0 : 1;
      std::cout << (cells.size() - failed) << "/" << cells.size() << " cells reproduce the expected trend\n";
      return failed == 0 ? slthermo::kExitSuccess : slthermo::kExitNotConverged;
    }
    if (mesh_dump->parsed()) {
      const slthermo::RunConfig config = load(config_path, mesh_dump->remaining());
      const auto mesh = slthermo::build_grid(config.mesh.nx, config.mesh.ny, config.mesh.crack_or_none());
      if (dump_path.empty()) {
        slthermo::write_mesh_dump(mesh, std::cout);
      } else {
        std::ofstream out(dump_path);
        if (!out) throw slthermo::IoError("cannot open " + dump_path);
        slthermo::write_mesh_dump(mesh, out);
      }
      return slthermo::kExitSuccess;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return slthermo::kExitError;
  }
  return slthermo::kExitError;
}
