#include "slthermo/assembly.hpp"
#include "slthermo/errors.hpp"
#include "slthermo/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace slthermo {
namespace {

MaterialParams default_material(double b = 0.02, double a = 0.5) {
  MaterialConstants c;
  c.a = a;
  c.b = b;
  c.fiber_angle = 0.3;
  return MaterialParams(c);
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  return Eigen::MatrixXd(a - b).cwiseAbs().maxCoeff();
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix t = a.transpose();
  return max_abs_difference(a, t);
}

TEST(ThermalAssembly, SymmetricAndRowSumsVanish) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  for (int order : {1, 2}) {
    const FESpace space(mesh, order, 1);
    const LinearSystem sys = assemble_thermal_raw(space, default_material(), {});
    EXPECT_LT(asymmetry(sys.matrix), 1e-14);
    const Eigen::VectorXd row_sums = sys.matrix * Eigen::VectorXd::Ones(space.num_dofs());
    EXPECT_LT(row_sums.cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ThermalAssembly, SourceLoadIntegratesToArea) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  const FESpace space(mesh, 2, 1);
  const LinearSystem sys = assemble_thermal_raw(space, default_material(), [](double, double) { return 3.0; });
  EXPECT_NEAR(sys.rhs.sum(), 3.0, 1e-13);
}

TEST(ThermalAssembly, ParallelMatchesSerial) {
  const CrackedMesh mesh = build_cracked_grid(8, 8, CrackSpec{});
  const FESpace space(mesh, 2, 1);
  const auto source = [](double x, double y) { return x * y; };
  const LinearSystem s = assemble_thermal_raw(space, default_material(), source, {.execution = Execution::serial});
  const LinearSystem p = assemble_thermal_raw(space, default_material(), source, {.execution = Execution::parallel});
  EXPECT_LE(max_abs_difference(s.matrix, p.matrix), 1e-12);
  EXPECT_LE((s.rhs - p.rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ThermalSolve, ConstantBottomTemperatureFillsThePlate) {
  const CrackedMesh mesh = build_cracked_grid(8, 8, CrackSpec{});
  for (int order : {1, 2}) {
    const FESpace space(mesh, order, 1);
    const FEField theta = solve_thermal(space, default_material(), {}, ThermalBC{});
    EXPECT_LT((theta.values.array() - 100.0).abs().maxCoeff(), 1e-10);
  }
}

TEST(ThermalSolve, ParabolicLoadPeaksAtBottomCentre) {
  const CrackedMesh mesh = build_cracked_grid(8, 8, CrackSpec{});
  const FESpace space(mesh, 2, 1);
  const FEField theta = solve_thermal(space, default_material(), {}, ThermalBC{.kind = ThermalLoad::parabolic});
  Eigen::Index at = 0;
  EXPECT_NEAR(theta.values.maxCoeff(&at), 100.0, 1e-10);
  EXPECT_EQ(space.node_point(static_cast<int>(at)).x, 0.5);
  EXPECT_EQ(space.node_point(static_cast<int>(at)).y, 0.0);
  EXPECT_GE(theta.values.minCoeff(), -1e-10);
}

TEST(ThermalDirichlet, RejectsEmptyMap) {
  LinearSystem sys{SparseMatrix(2, 2), Eigen::VectorXd::Zero(2)};
  EXPECT_THROW(apply_dirichlet(sys, {}), EmptyDirichlet);
}

TEST(Gradient, ExactForRepresentableFields) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  const FESpace q1(mesh, 1, 1);
  const FEField lin = FEField::interpolate(q1, [](double, double y) { return y; });
  const FESpace q2(mesh, 2, 1);
  const FEField quad = FEField::interpolate(q2, [](double x, double) { return 400.0 * x * (1.0 - x); });
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int q = 0; q < q1.shapes().num_qp(); ++q) {
      const Eigen::Vector2d g = thermal_gradient_at_qp(lin, e, q);
      EXPECT_NEAR(g[0], 0.0, 1e-13);
      EXPECT_NEAR(g[1], 1.0, 1e-13);
    }
    const ElementValues ev = q2.element_values(e);
    for (int q = 0; q < q2.shapes().num_qp(); ++q) {
      const Eigen::Vector2d g = thermal_gradient_at_qp(quad, e, q);
      EXPECT_NEAR(g[0], 400.0 * (1.0 - 2.0 * ev.xy(q, 0)), 1e-10);
      EXPECT_NEAR(g[1], 0.0, 1e-10);
    }
  }
}

TEST(Strain, ExamplesAtEveryQuadraturePoint) {
  const CrackedMesh mesh = build_grid(3, 3);
  const FESpace space(mesh, 2, 2);
  const FEField stretch = FEField::interpolate_vector(space, [](double x, double) { return Eigen::Vector2d(x, 0.0); });
  const FEField shear = FEField::interpolate_vector(space, [](double x, double y) { return Eigen::Vector2d(y, x); });
  const FEField rigid = FEField::interpolate_vector(space, [](double x, double y) { return Eigen::Vector2d(-y, x); });
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int q = 0; q < space.shapes().num_qp(); ++q) {
      EXPECT_LT((evaluate_strain(stretch, e, q).mandel() - Eigen::Vector3d(1, 0, 0)).norm(), 1e-13);
      EXPECT_LT((evaluate_strain(shear, e, q).mandel() - Eigen::Vector3d(0, 0, std::sqrt(2.0))).norm(), 1e-13);
      EXPECT_LT(evaluate_strain(rigid, e, q).norm(), 1e-13);
    }
  }
}

TEST(MechanicalAssembly, SymmetricAndParallelMatchesSerial) {
  const CrackedMesh mesh = build_cracked_grid(8, 8, CrackSpec{});
  const FESpace sspace(mesh, 2, 1);
  const FESpace vspace(mesh, 2, 2);
  const FEField theta = FEField::interpolate(sspace, [](double x, double y) { return 100.0 * x * (1.0 - y); });
  const FEField u = FEField::interpolate_vector(vspace, [](double x, double y) {
    return Eigen::Vector2d(0.1 * x * y, 0.2 * y * y);
  });
  const MaterialParams p = default_material();
  const LinearSystem s = assemble_mechanical_raw(vspace, p, theta, u, {.execution = Execution::serial});
  const LinearSystem q = assemble_mechanical_raw(vspace, p, theta, u, {.execution = Execution::parallel});
  EXPECT_LT(asymmetry(s.matrix), 1e-13);
  EXPECT_LE(max_abs_difference(s.matrix, q.matrix), 1e-12);
  EXPECT_LE((s.rhs - q.rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MechanicalAssembly, ConstantTemperatureGivesNoLoad) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  const FESpace sspace(mesh, 2, 1);
  const FESpace vspace(mesh, 2, 2);
  const FEField theta = FEField::interpolate(sspace, [](double, double) { return 100.0; });
  const LinearSystem sys = assemble_mechanical_raw(vspace, default_material(), theta, FEField::zeros(vspace));
  EXPECT_LT(sys.rhs.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MechanicalAssembly, ThermalLoadMatchesHandComputation) {
  // theta = y on one element: load_i = -alpha int phi_i (0, 1) dx.
  const CrackedMesh mesh = build_grid(1, 1);
  const FESpace sspace(mesh, 1, 1);
  const FESpace vspace(mesh, 1, 2);
  const FEField theta = FEField::interpolate(sspace, [](double, double y) { return y; });
  const MaterialParams p = default_material();
  const LinearSystem sys = assemble_mechanical_raw(vspace, p, theta, FEField::zeros(vspace));
  for (int n = 0; n < 4; ++n) {
    EXPECT_NEAR(sys.rhs[vspace.dof(n, 0)], 0.0, 1e-15);
    EXPECT_NEAR(sys.rhs[vspace.dof(n, 1)], -0.25 * p.alpha(), 1e-15);
  }
}

TEST(MechanicalAssembly, LinearWhenBIsZero) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  const FESpace sspace(mesh, 2, 1);
  const FESpace vspace(mesh, 2, 2);
  const FEField theta = FEField::zeros(sspace);
  const FEField u = FEField::interpolate_vector(vspace, [](double x, double y) { return Eigen::Vector2d(x * y, y); });
  const MaterialParams p = default_material(0.0);
  const LinearSystem a = assemble_mechanical_raw(vspace, p, theta, FEField::zeros(vspace));
  const LinearSystem b = assemble_mechanical_raw(vspace, p, theta, u);
  EXPECT_EQ(max_abs_difference(a.matrix, b.matrix), 0.0);
}

TEST(MechanicalAssembly, UniformStrainScalesBySecantFactor) {
  const CrackedMesh mesh = build_grid(1, 1);
  const FESpace sspace(mesh, 1, 1);
  const FESpace vspace(mesh, 1, 2);
  const FEField theta = FEField::zeros(sspace);
  const MaterialParams p = default_material(0.5, 1.0);
  const FEField u = FEField::interpolate_vector(vspace, [](double x, double y) {
    return Eigen::Vector2d(0.2 * x, 0.1 * x - 0.3 * y);
  });
  const SymTensor2 eps = evaluate_strain(u, 0, 0);
  const double factor = secant_factor(energy_norm(eps, p.stiffness()), p);
  EXPECT_GT(factor, 1.0);
  const LinearSystem base = assemble_mechanical_raw(vspace, p, theta, FEField::zeros(vspace));
  MechanicalAssemblyStats stats;
  const LinearSystem scaled = assemble_mechanical_raw(vspace, p, theta, u, {}, &stats);
  EXPECT_LT(max_abs_difference(scaled.matrix, factor * base.matrix), 1e-13 * factor);
  EXPECT_EQ(stats.clamp_events, 0u);
  EXPECT_NEAR(stats.max_energy_norm, energy_norm(eps, p.stiffness()), 1e-14);
}

TEST(MechanicalAssembly, ClampsInadmissiblePreviousIterate) {
  const CrackedMesh mesh = build_grid(1, 1);
  const FESpace sspace(mesh, 1, 1);
  const FESpace vspace(mesh, 1, 2);
  const MaterialParams p = default_material(0.5, 1.0);
  const FEField u = FEField::interpolate_vector(vspace, [](double x, double) { return Eigen::Vector2d(10.0 * x, 0.0); });
  MechanicalAssemblyStats stats;
  const LinearSystem sys = assemble_mechanical_raw(vspace, p, FEField::zeros(sspace), u, {}, &stats);
  EXPECT_EQ(stats.clamp_events, static_cast<std::size_t>(vspace.shapes().num_qp()));
  EXPECT_TRUE(Eigen::MatrixXd(sys.matrix).allFinite());
}

TEST(MechanicalAssembly, DefaultQuadratureIsExactForLinearMaterial) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  for (int order : {1, 2}) {
    const FESpace sspace(mesh, order, 1);
    const FESpace vspace(mesh, order, 2);
    const FEField theta = FEField::interpolate(sspace, [](double x, double y) { return x * x + y; });
    const MaterialParams p = default_material(0.0);
    const LinearSystem def = assemble_mechanical_raw(vspace, p, theta, FEField::zeros(vspace));
    const LinearSystem high =
        assemble_mechanical_raw(vspace, p, theta, FEField::zeros(vspace), {.quadrature_points = 5});
    EXPECT_LT(max_abs_difference(def.matrix, high.matrix), 1e-12);
    EXPECT_LT((def.rhs - high.rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MechanicalDirichlet, ConstrainsTopAndBottom) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  const FESpace vspace(mesh, 2, 2);
  const DirichletMap bc = mechanical_dirichlet(vspace, MechanicalBC{.top_uy = 0.1});
  // 9 bottom nodes (u_y) and 9 top nodes (u_x, u_y).
  EXPECT_EQ(bc.size(), 27u);
  for (int n : vspace.boundary_nodes(FacetTag::top)) {
    EXPECT_EQ(bc.at(vspace.dof(n, 0)), 0.0);
    EXPECT_EQ(bc.at(vspace.dof(n, 1)), 0.1);
  }
  for (int n : vspace.boundary_nodes(FacetTag::bottom)) {
    EXPECT_EQ(bc.at(vspace.dof(n, 1)), 0.0);
    EXPECT_FALSE(bc.contains(vspace.dof(n, 0)));
  }
}

TEST(ApplyDirichlet, EliminatesSymmetrically) {
  // [[2, -1], [-1, 2]] u = (0, 0) with u_0 = 1 gives u_1 = 1/2.
  SparseMatrix m(2, 2);
  m.insert(0, 0) = 2.0;
  m.insert(0, 1) = -1.0;
  m.insert(1, 0) = -1.0;
  m.insert(1, 1) = 2.0;
  LinearSystem sys{m, Eigen::VectorXd::Zero(2)};
  apply_dirichlet(sys, {{0, 1.0}});
  EXPECT_EQ(sys.matrix.coeff(0, 1), 0.0);
  EXPECT_EQ(sys.matrix.coeff(1, 0), 0.0);
  EXPECT_EQ(sys.matrix.coeff(0, 0), 1.0);
  const Eigen::VectorXd u = linear_solve(sys);
  EXPECT_NEAR(u[0], 1.0, 1e-15);
  EXPECT_NEAR(u[1], 0.5, 1e-15);
}

TEST(Mass, IntegratesToArea) {
  const CrackedMesh mesh = build_cracked_grid(4, 4, CrackSpec{});
  for (int order : {1, 2}) {
    const FESpace sspace(mesh, order, 1);
    const FESpace vspace(mesh, order, 2);
    EXPECT_NEAR(Eigen::MatrixXd(assemble_mass(sspace)).sum(), 1.0, 1e-13);
    EXPECT_NEAR(Eigen::MatrixXd(assemble_mass(vspace)).sum(), 2.0, 1e-13);
  }
}

TEST(PatchTest, LinearDisplacementIsReproduced) {
  const CrackedMesh mesh = build_grid(4, 4);
  const auto exact = [](double x, double y) { return Eigen::Vector2d(0.01 * x + 0.02 * y, -0.015 * x + 0.005 * y); };
  for (int order : {1, 2}) {
    const FESpace sspace(mesh, order, 1);
    const FESpace vspace(mesh, order, 2);
    DirichletMap bc;
    for (FacetTag side : {FacetTag::bottom, FacetTag::right, FacetTag::top, FacetTag::left}) {
      for (int n : vspace.boundary_nodes(side)) {
        const Point2 x = vspace.node_point(n);
        const Eigen::Vector2d v = exact(x.x, x.y);
        bc[vspace.dof(n, 0)] = v[0];
        bc[vspace.dof(n, 1)] = v[1];
      }
    }
    LinearSystem sys = assemble_mechanical_raw(vspace, default_material(0.0), FEField::zeros(sspace),
                                               FEField::zeros(vspace));
    apply_dirichlet(sys, bc);
    const Eigen::VectorXd u = linear_solve(sys);
    const FEField ref = FEField::interpolate_vector(vspace, exact);
    EXPECT_LT((u - ref.values).cwiseAbs().maxCoeff(), 1e-10) << "order " << order;
  }
}

}  // namespace
}  // namespace slthermo
