#pragma once

#include "slthermo/constitutive.hpp"
#include "slthermo/fe_space.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <map>

namespace slthermo {

using SparseMatrix = Eigen::SparseMatrix<double>;
using ScalarFunction = std::function<double(double x, double y)>;
/// Prescribed dof values.
using DirichletMap = std::map<int, double>;

struct LinearSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

/// Element loops run OpenMP-parallel by default; `serial` is the reference path.
enum class Execution { serial, parallel };

enum class ThermalLoad { constant, parabolic };

/// Temperature prescribed on the bottom edge; every other boundary
/// (crack faces included) is insulated.
struct ThermalBC {
  ThermalLoad kind = ThermalLoad::constant;
  double theta0 = 100.0;       ///< constant load
  double coefficient = 400.0;  ///< parabolic load c x (1 - x)

  double bottom_value(double x) const;
  bool operator==(const ThermalBC&) const = default;
};

/// u = (0, top_uy) on the top edge, u_y = 0 on the bottom edge, traction
/// free elsewhere.
struct MechanicalBC {
  double top_uy = 0.0;
  bool operator==(const MechanicalBC&) const = default;
};

struct AssemblyOptions {
  Execution execution = Execution::parallel;
  /// Gauss points per direction; 0 selects (order + 1).
  int quadrature_points = 0;
};

struct MechanicalAssemblyStats {
  std::size_t clamp_events = 0;
  double max_energy_norm = 0.0;
};

/// Conductivity matrix int k grad(phi_i).grad(phi_j) and load int Q phi_i,
/// no boundary conditions applied.
LinearSystem assemble_thermal_raw(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                                  const AssemblyOptions& options = {});

DirichletMap thermal_dirichlet(const FESpace& space, const ThermalBC& bc);

/// Thermal system with the bottom Dirichlet data eliminated.
LinearSystem assemble_thermal(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                              const ThermalBC& bc, const AssemblyOptions& options = {});

/// Picard-linearized stiffness int phi(t_prev) E[eps(phi_i)] : eps(phi_j) with
/// t_prev the energy norm of eps(u_prev) at each quadrature point, and load
/// -int alpha grad(theta) . v. `theta` lives on a scalar space over the same mesh.
LinearSystem assemble_mechanical_raw(const FESpace& space, const MaterialParams& p, const FEField& theta,
                                     const FEField& u_prev, const AssemblyOptions& options = {},
                                     MechanicalAssemblyStats* stats = nullptr);

DirichletMap mechanical_dirichlet(const FESpace& space, const MechanicalBC& bc);

LinearSystem assemble_mechanical(const FESpace& space, const MaterialParams& p, const FEField& theta,
                                 const FEField& u_prev, const MechanicalBC& bc, const AssemblyOptions& options = {},
                                 MechanicalAssemblyStats* stats = nullptr);

/// Symmetric elimination: constrained rows and columns are zeroed, the
/// diagonal set to one and the known values lifted into the rhs.
/// Throws EmptyDirichlet for an empty map.
void apply_dirichlet(LinearSystem& system, const DirichletMap& constraints);

/// Consistent mass matrix (block-diagonal in components for vector spaces).
SparseMatrix assemble_mass(const FESpace& space, const AssemblyOptions& options = {});

}  // namespace slthermo
