#pragma once

#include "slthermo/constitutive.hpp"
#include "slthermo/fe_space.hpp"
#include "slthermo/solver.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace slthermo {

enum class FieldKind { scalar, vector, tensor };

/// Values at the geometric mesh nodes. Scalar fields use one column, vector
/// fields two (x, y), tensor fields three (Mandel components).
struct NodalField {
  std::string name;
  std::string units;
  FieldKind kind = FieldKind::scalar;
  Eigen::MatrixXd values;  ///< num_nodes x columns

  int num_nodes() const { return static_cast<int>(values.rows()); }
};

using FieldMap = std::map<std::string, NodalField>;

enum class NodalRecovery {
  /// Fields evaluated at the node inside each adjacent element, then
  /// averaged with element-area weights.
  corner_values,
  /// Area-weighted mean of all Gauss-point values of the adjacent elements.
  quadrature_average,
};

struct RecoveryOptions {
  Execution execution = Execution::parallel;
  NodalRecovery method = NodalRecovery::corner_values;
};

/// Recovers strain, stress, thermal stress, energy density, their norms and
/// principal values, plus the displacement and temperature, at mesh nodes.
/// Both recovery methods reproduce constant fields exactly.
/// Throws InadmissibleStrain if a sampled strain violates the bound.
FieldMap recover_fields(const FEField& u, const FEField& theta, const MaterialParams& p,
                        const RecoveryOptions& options = {});

/// Node index holding the largest value of a scalar field.
int argmax_node(const NodalField& field);

struct OpeningPoint {
  double x;
  double jump;
};

/// u_y(upper) - u_y(lower) along the crack faces, mouth first, tip (jump 0) last.
std::vector<OpeningPoint> crack_opening_profile(const FEField& u, const CrackedMesh& mesh);

struct LinePoint {
  double x;
  double value;
};

/// Scalar field values at the mesh nodes on the horizontal line y, sorted by x.
/// Split crack nodes contribute the upper copy.
std::vector<LinePoint> extract_line(const NodalField& field, const CrackedMesh& mesh, double y);

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  double max_stress_norm = 0.0;
  double max_strain_norm = 0.0;
  double max_principal_stress = 0.0;
  double min_principal_stress = 0.0;
  double max_principal_strain = 0.0;
  double min_principal_strain = 0.0;
  bool converged = false;
  int iterations = 0;
  std::size_t clamp_events = 0;
  /// Non-empty when the run failed outright.
  std::string error;
};

/// Extrema of recovered fields for a sweep table row.
SweepRow summarize(const FieldMap& fields, const SolveReport& report);

/// Legacy ASCII VTK unstructured grid with quad cells (type 9) and one
/// POINT_DATA entry per field.
void write_vtk(const FieldMap& fields, const CrackedMesh& mesh, const std::filesystem::path& path);

/// CSV with a header line and %.17g numbers.
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
void write_csv(const std::vector<OpeningPoint>& profile, const std::filesystem::path& path);
void write_csv(const std::vector<LinePoint>& line, const std::filesystem::path& path);

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_double(double value);

}  // namespace slthermo
