#pragma once

#include "slthermo/assembly.hpp"
#include "slthermo/constitutive.hpp"
#include "slthermo/errors.hpp"
#include "slthermo/mesh.hpp"
#include "slthermo/solver.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slthermo {

struct MeshConfig {
  int nx = 32;
  int ny = 32;
  bool cracked = true;
  CrackSpec crack;

  std::optional<CrackSpec> crack_or_none() const { return cracked ? std::optional(crack) : std::nullopt; }
  bool operator==(const MeshConfig&) const = default;
};

struct OutputConfig {
  std::string vtk_path;
  std::string csv_path;
  std::string profile_path;
  /// Fields written to VTK; empty means all.
  std::vector<std::string> fields;
  bool operator==(const OutputConfig&) const = default;
};

enum class SweepParameter { a, b };

struct SweepConfig {
  SweepParameter parameter = SweepParameter::b;
  std::vector<double> values;
  bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
  MeshConfig mesh;
  int element_order = 2;
  MaterialConstants material;
  ThermalBC thermal_bc;
  double heat_source = 0.0;  ///< constant Q
  MechanicalBC mechanical_bc;
  PicardConfig picard;
  OutputConfig outputs;
  std::optional<SweepConfig> sweep;

  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public Error {
 public:
  enum class Kind { unknown_key, type_mismatch, invariant_violation, syntax };

  ConfigError(Kind kind, std::string key, int line, const std::string& detail);

  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }
  /// 1-based source line, 0 for command-line overrides or defaults.
  int line() const { return line_; }

 private:
  Kind kind_;
  std::string key_;
  int line_;
};

/// Parses `key = value` lines (`#` comments, dotted keys). Omitted keys keep
/// their defaults. `overrides` are applied after the file, in order.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Applies one key/value pair without validating cross-key invariants.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value, int line = 0);

/// Checks every invariant; throws ConfigError(invariant_violation).
void validate(const RunConfig& config);

/// Text that parse_config maps back to an identical RunConfig.
std::string serialize_config(const RunConfig& config);

std::string_view to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(std::string_view text);
std::vector<double> parse_value_list(std::string_view text);

}  // namespace slthermo
