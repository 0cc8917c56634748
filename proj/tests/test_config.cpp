#include "slthermo/config.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace slthermo {
namespace {

ConfigError capture(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& err) {
    return err;
  }
  ADD_FAILURE() << "expected a ConfigError";
  return ConfigError(ConfigError::Kind::syntax, "", 0, "");
}

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c, RunConfig{});
  EXPECT_EQ(c.mesh.nx, 32);
  EXPECT_EQ(c.element_order, 2);
  EXPECT_EQ(c.material.a, 0.5);
  EXPECT_EQ(c.material.b, 0.02);
  EXPECT_EQ(c.thermal_bc.theta0, 100.0);
  EXPECT_EQ(c.picard.tol, 1e-8);
  EXPECT_EQ(c.picard.max_iter, 100);
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, ParsesKeysCommentsAndWhitespace) {
  const RunConfig c = parse_config(
      "# plate\n"
      "mesh.nx = 16   # cells\n"
      "  mesh.ny=8\n"
      "\n"
      "material.fiber_angle = 1.5707963267948966\n"
      "thermal_bc.kind = parabolic\n"
      "crack.mouth_edge = right\n"
      "outputs.vtk_path = \"out dir/run.vtk\"\n"
      "outputs.fields = stress_norm, strain_norm\n");
  EXPECT_EQ(c.mesh.nx, 16);
  EXPECT_EQ(c.mesh.ny, 8);
  EXPECT_EQ(c.material.fiber_angle, std::numbers::pi / 2);
  EXPECT_EQ(c.thermal_bc.kind, ThermalLoad::parabolic);
  EXPECT_EQ(c.mesh.crack.mouth_edge, MouthEdge::right);
  EXPECT_EQ(c.outputs.vtk_path, "out dir/run.vtk");
  EXPECT_EQ(c.outputs.fields, (std::vector<std::string>{"stress_norm", "strain_norm"}));
}

TEST(Config, ParabolicLoadPeaksAtHundred) {
  const RunConfig c = parse_config("thermal_bc.kind = parabolic\n");
  EXPECT_EQ(c.thermal_bc.bottom_value(0.5), 100.0);
  EXPECT_EQ(c.thermal_bc.bottom_value(0.0), 0.0);
  EXPECT_EQ(c.thermal_bc.bottom_value(1.0), 0.0);
}

TEST(Config, InvariantViolationNamesKeyAndLine) {
  const ConfigError err = capture("mesh.nx = 8\nmaterial.b = -1\n");
  EXPECT_EQ(err.kind(), ConfigError::Kind::invariant_violation);
  EXPECT_EQ(err.key(), "material.b");
  EXPECT_EQ(err.line(), 2);
  EXPECT_NE(std::string(err.what()).find("material.b"), std::string::npos);
}

TEST(Config, RejectsOtherInvariants) {
  EXPECT_EQ(capture("material.a = 0\n").key(), "material.a");
  EXPECT_EQ(capture("material.mu = 0\n").key(), "material.mu");
  EXPECT_EQ(capture("material.k = -1\n").key(), "material.k");
  EXPECT_EQ(capture("element_order = 3\n").key(), "element_order");
  EXPECT_EQ(capture("picard.damping = 0\n").key(), "picard.damping");
  EXPECT_EQ(capture("material.gamma = -100\n").key(), "material.gamma");
  EXPECT_EQ(capture("mesh.ny = 3\n").kind(), ConfigError::Kind::invariant_violation);
  EXPECT_EQ(capture("sweep.parameter = a\n").key(), "sweep.values");
  EXPECT_EQ(capture("sweep.parameter = a\nsweep.values = 0.5, 0\n").key(), "sweep.values");
}

TEST(Config, UnknownKey) {
  const ConfigError err = capture("\nmaterial.zeta = 1\n");
  EXPECT_EQ(err.kind(), ConfigError::Kind::unknown_key);
  EXPECT_EQ(err.key(), "material.zeta");
  EXPECT_EQ(err.line(), 2);
}

TEST(Config, TypeMismatch) {
  EXPECT_EQ(capture("mesh.nx = 4.5\n").kind(), ConfigError::Kind::type_mismatch);
  EXPECT_EQ(capture("material.b = lots\n").kind(), ConfigError::Kind::type_mismatch);
  EXPECT_EQ(capture("mesh.crack = maybe\n").kind(), ConfigError::Kind::type_mismatch);
  EXPECT_EQ(capture("thermal_bc.kind = linear\n").kind(), ConfigError::Kind::type_mismatch);
  EXPECT_EQ(capture("material.b =\n").kind(), ConfigError::Kind::type_mismatch);
}

TEST(Config, SyntaxError) {
  const ConfigError err = capture("mesh.nx = 4\nmesh.ny\n");
  EXPECT_EQ(err.kind(), ConfigError::Kind::syntax);
  EXPECT_EQ(err.line(), 2);
}

TEST(Config, OverridesApplyAfterFile) {
  const RunConfig c = parse_config("material.b = 0.03\n", {{"material.b", "0.01"}, {"mesh.nx", "8"}});
  EXPECT_EQ(c.material.b, 0.01);
  EXPECT_EQ(c.mesh.nx, 8);
  const ConfigError err = capture("", {{"material.b", "-2"}});
  EXPECT_EQ(err.key(), "material.b");
  EXPECT_EQ(err.line(), 0);
}

TEST(Config, SerializeRoundTrips) {
  RunConfig c;
  c.mesh = {.nx = 12, .ny = 6, .cracked = true, .crack = {.y_line = 0.5, .mouth_edge = MouthEdge::right, .tip_x = 0.25}};
  c.element_order = 1;
  c.material.fiber_angle = std::numbers::pi / 3;
  c.material.a = 1.0 / 3.0;
  c.material.b = 0.1 / 3.0;
  c.thermal_bc = {.kind = ThermalLoad::parabolic, .theta0 = 50.0, .coefficient = 123.456};
  c.heat_source = 0.7;
  c.mechanical_bc.top_uy = 0.1;
  c.picard = {.tol = 1e-10, .max_iter = 17, .damping = 0.5};
  c.outputs = {.vtk_path = "a.vtk", .csv_path = "b.csv", .profile_path = "", .fields = {"stress", "strain"}};
  c.sweep = SweepConfig{.parameter = SweepParameter::a, .values = {0.1, 0.5, 1.0 / 7.0}};
  EXPECT_EQ(parse_config(serialize_config(c)), c);
  EXPECT_EQ(parse_config(serialize_config(RunConfig{})), RunConfig{});
}

TEST(Config, ValueListAndSweepParameter) {
  EXPECT_EQ(parse_value_list("0, 0.01,0.02 , 0.03"), (std::vector<double>{0.0, 0.01, 0.02, 0.03}));
  EXPECT_EQ(parse_sweep_parameter(" a "), SweepParameter::a);
  EXPECT_THROW(parse_sweep_parameter("c"), ConfigError);
  EXPECT_THROW(parse_value_list("1,,2"), ConfigError);
}

}  // namespace
}  // namespace slthermo
