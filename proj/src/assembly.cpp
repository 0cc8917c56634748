#include "slthermo/assembly.hpp"

#include "slthermo/errors.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace slthermo {

double ThermalBC::bottom_value(double x) const {
  return kind == ThermalLoad::constant ? theta0 : coefficient * x * (1.0 - x);
}

namespace {

struct LocalSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

int quadrature_points(const FESpace& space, const AssemblyOptions& options) {
  return options.quadrature_points > 0 ? options.quadrature_points : space.order() + 1;
}

std::vector<int> local_dofs(const FESpace& space, int e) {
  const auto nodes = space.element_nodes(e);
  const int nc = space.components();
  std::vector<int> dofs(nodes.size() * nc);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (int c = 0; c < nc; ++c) dofs[a * nc + c] = space.dof(nodes[a], c);
  }
  return dofs;
}

void scatter(const FESpace& space, int e, const LocalSystem& local, std::vector<Eigen::Triplet<double>>& triplets,
             Eigen::VectorXd& rhs) {
  const auto dofs = local_dofs(space, e);
  const int n = static_cast<int>(dofs.size());
  for (int i = 0; i < n; ++i) {
    rhs[dofs[i]] += local.rhs[i];
    for (int j = 0; j < n; ++j) triplets.emplace_back(dofs[i], dofs[j], local.matrix(i, j));
  }
}

/// Runs `kernel(e, local)` over all elements and sums the local systems.
/// The parallel path computes local systems concurrently and scatters them
/// in element order, so both paths add the same numbers in the same order.
template <class Kernel>
LinearSystem assemble_elements(const FESpace& space, Execution execution, Kernel&& kernel) {
  const int ne = space.num_elements();
  const int nd = space.dofs_per_element();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(ne) * nd * nd);
  LinearSystem system;
  system.rhs = Eigen::VectorXd::Zero(space.num_dofs());

  if (execution == Execution::serial) {
    LocalSystem local;
    for (int e = 0; e < ne; ++e) {
      kernel(e, local);
      scatter(space, e, local, triplets, system.rhs);
    }
  } else {
    std::vector<LocalSystem> locals(ne);
#pragma omp parallel for schedule(static)
    for (int e = 0; e < ne; ++e) kernel(e, locals[e]);
    for (int e = 0; e < ne; ++e) scatter(space, e, locals[e], triplets, system.rhs);
  }
  system.matrix.resize(space.num_dofs(), space.num_dofs());
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return system;
}

}  // namespace

LinearSystem assemble_thermal_raw(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                                  const AssemblyOptions& options) {
  if (space.components() != 1) throw std::invalid_argument("thermal assembly needs a scalar space");
  const ShapeTable table(space.order(), quadrature_points(space, options));
  const double k = p.k();
  return assemble_elements(space, options.execution, [&](int e, LocalSystem& local) {
    const ElementValues ev = space.element_values(e, table);
    const int ns = table.num_shapes();
    local.matrix.setZero(ns, ns);
    local.rhs.setZero(ns);
    for (int q = 0; q < table.num_qp(); ++q) {
      const auto gx = ev.dx.row(q);
      const auto gy = ev.dy.row(q);
      local.matrix.noalias() += (k * ev.jxw[q]) * (gx.transpose() * gx + gy.transpose() * gy);
      if (source) local.rhs += (source(ev.xy(q, 0), ev.xy(q, 1)) * ev.jxw[q]) * ev.value.row(q).transpose();
    }
  });
}

DirichletMap thermal_dirichlet(const FESpace& space, const ThermalBC& bc) {
  DirichletMap constraints;
  for (int n : space.boundary_nodes(FacetTag::bottom)) constraints[n] = bc.bottom_value(space.node_point(n).x);
  return constraints;
}

LinearSystem assemble_thermal(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                              const ThermalBC& bc, const AssemblyOptions& options) {
  LinearSystem system = assemble_thermal_raw(space, p, source, options);
  apply_dirichlet(system, thermal_dirichlet(space, bc));
  return system;
}

LinearSystem assemble_mechanical_raw(const FESpace& space, const MaterialParams& p, const FEField& theta,
                                     const FEField& u_prev, const AssemblyOptions& options,
                                     MechanicalAssemblyStats* stats) {
  if (space.components() != 2) throw std::invalid_argument("mechanical assembly needs a vector space");
  if (theta.space == nullptr || theta.space->components() != 1 || &theta.space->mesh() != &space.mesh()) {
    throw std::invalid_argument("temperature must be a scalar field on the same mesh");
  }
  if (u_prev.space != &space) throw std::invalid_argument("previous iterate must live on the assembly space");

  const int nqd = quadrature_points(space, options);
  const ShapeTable table(space.order(), nqd);
  const ShapeTable theta_table(theta.space->order(), nqd);
  const Eigen::Matrix3d& stiffness = p.stiffness().entries();
  const double alpha = p.alpha();
  const int ns = table.num_shapes();
  const int ne = space.num_elements();

  std::vector<std::size_t> clamps(ne, 0);
  std::vector<double> max_t(ne, 0.0);
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  LinearSystem system = assemble_elements(space, options.execution, [&](int e, LocalSystem& local) {
    const ElementValues ev = space.element_values(e, table);
    const ElementValues tv = theta.space->element_values(e, theta_table);
    const Eigen::VectorXd theta_local = theta.local_values(e);
    const Eigen::VectorXd u_local = u_prev.local_values(e);
    local.matrix.setZero(2 * ns, 2 * ns);
    local.rhs.setZero(2 * ns);
    Eigen::MatrixXd strain_op(3, 2 * ns);
    for (int q = 0; q < table.num_qp(); ++q) {
      const double t = energy_norm(strain_at(u_local, ev, q), p.stiffness());
      max_t[e] = std::max(max_t[e], t);
      const RelaxationFactor factor = relaxation_factor(t, p);
      if (factor.clamped) ++clamps[e];

      for (int s = 0; s < ns; ++s) {
        const double dx = ev.dx(q, s);
        const double dy = ev.dy(q, s);
        strain_op.col(2 * s) << dx, 0.0, inv_sqrt2 * dy;
        strain_op.col(2 * s + 1) << 0.0, dy, inv_sqrt2 * dx;
      }
      local.matrix.noalias() += (factor.value * ev.jxw[q]) * (strain_op.transpose() * stiffness * strain_op);

      const double gx = tv.dx.row(q).dot(theta_local);
      const double gy = tv.dy.row(q).dot(theta_local);
      for (int s = 0; s < ns; ++s) {
        const double w = -alpha * ev.value(q, s) * ev.jxw[q];
        local.rhs[2 * s] += w * gx;
        local.rhs[2 * s + 1] += w * gy;
      }
    }
  });

  if (stats != nullptr) {
    for (int e = 0; e < ne; ++e) {
      stats->clamp_events += clamps[e];
      stats->max_energy_norm = std::max(stats->max_energy_norm, max_t[e]);
    }
  }
  return system;
}

DirichletMap mechanical_dirichlet(const FESpace& space, const MechanicalBC& bc) {
  DirichletMap constraints;
  for (int n : space.boundary_nodes(FacetTag::bottom)) constraints[space.dof(n, 1)] = 0.0;
  for (int n : space.boundary_nodes(FacetTag::top)) {
    constraints[space.dof(n, 0)] = 0.0;
    constraints[space.dof(n, 1)] = bc.top_uy;
  }
  return constraints;
}

LinearSystem assemble_mechanical(const FESpace& space, const MaterialParams& p, const FEField& theta,
                                 const FEField& u_prev, const MechanicalBC& bc, const AssemblyOptions& options,
                                 MechanicalAssemblyStats* stats) {
  LinearSystem system = assemble_mechanical_raw(space, p, theta, u_prev, options, stats);
  apply_dirichlet(system, mechanical_dirichlet(space, bc));
  return system;
}

void apply_dirichlet(LinearSystem& system, const DirichletMap& constraints) {
  if (constraints.empty()) throw EmptyDirichlet("no Dirichlet data: the operator would be singular");
  const Eigen::Index n = system.matrix.rows();
  std::vector<char> fixed(n, 0);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
  for (const auto& [dof, value] : constraints) {
    if (dof < 0 || dof >= n) throw std::out_of_range("Dirichlet dof out of range");
    fixed[dof] = 1;
    values[dof] = value;
  }

  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(system.matrix.nonZeros());
  for (Eigen::Index col = 0; col < system.matrix.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(system.matrix, col); it; ++it) {
      const auto row = it.row();
      if (fixed[col] && !fixed[row]) system.rhs[row] -= it.value() * values[col];
      if (!fixed[col] && !fixed[row]) kept.emplace_back(row, col, it.value());
    }
  }
  for (const auto& [dof, value] : constraints) {
    kept.emplace_back(dof, dof, 1.0);
    system.rhs[dof] = value;
  }
  system.matrix.setFromTriplets(kept.begin(), kept.end());
}

SparseMatrix assemble_mass(const FESpace& space, const AssemblyOptions& options) {
  const ShapeTable table(space.order(), quadrature_points(space, options));
  const int nc = space.components();
  return assemble_elements(space, options.execution, [&](int e, LocalSystem& local) {
           const ElementValues ev = space.element_values(e, table);
           const int ns = table.num_shapes();
           Eigen::MatrixXd scalar = Eigen::MatrixXd::Zero(ns, ns);
           for (int q = 0; q < table.num_qp(); ++q) {
             scalar.noalias() += ev.jxw[q] * (ev.value.row(q).transpose() * ev.value.row(q));
           }
           local.matrix.setZero(ns * nc, ns * nc);
           local.rhs.setZero(ns * nc);
           for (int i = 0; i < ns; ++i) {
             for (int j = 0; j < ns; ++j) {
               for (int c = 0; c < nc; ++c) local.matrix(i * nc + c, j * nc + c) = scalar(i, j);
             }
           }
         })
      .matrix;
}

}  // namespace slthermo
