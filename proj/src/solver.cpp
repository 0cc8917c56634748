#include "slthermo/solver.hpp"

#include "slthermo/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slthermo {

Eigen::VectorXd LinearSolver::solve(const LinearSystem& system, LinearSolveStats* stats) {
  const SparseMatrix& a = system.matrix;
  const Eigen::VectorXd& b = system.rhs;
  if (a.rows() != a.cols() || a.rows() != b.size()) throw std::invalid_argument("linear system has mismatched sizes");

  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    if (stats != nullptr) *stats = {};
    return Eigen::VectorXd::Zero(b.size());
  }

  if (!factorization_ || analyzed_size_ != a.rows() || analyzed_nnz_ != a.nonZeros()) {
    factorization_ = std::make_unique<Factorization>();
    factorization_->analyzePattern(a);
    analyzed_size_ = a.rows();
    analyzed_nnz_ = a.nonZeros();
  }
  factorization_->factorize(a);
  if (factorization_->info() != Eigen::Success) {
    throw SolverBreakdown("Cholesky factorization failed: matrix is not symmetric positive definite");
  }

  Eigen::VectorXd x = factorization_->solve(b);
  Eigen::VectorXd residual = b - a * x;
  double relative = residual.norm() / b_norm;
  int steps = 0;
  for (; relative > kLinearSolveTolerance && steps < 5; ++steps) {
    x += factorization_->solve(residual);
    residual = b - a * x;
    relative = residual.norm() / b_norm;
  }
  if (!std::isfinite(relative) || relative > kLinearSolveTolerance) {
    std::ostringstream msg;
    msg << "linear solve stalled at relative residual " << relative;
    throw SolverBreakdown(msg.str());
  }
  if (stats != nullptr) *stats = {relative, steps};
  return x;
}

Eigen::VectorXd linear_solve(const LinearSystem& system, LinearSolveStats* stats) {
  LinearSolver solver;
  return solver.solve(system, stats);
}

FEField solve_thermal(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                      const ThermalBC& bc, const AssemblyOptions& options) {
  const LinearSystem system = assemble_thermal(space, p, source, bc, options);
  return {&space, linear_solve(system)};
}

double mass_norm(const SparseMatrix& mass, const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, v.dot(mass * v)));
}

PicardResult picard_solve(const FESpace& space, const MaterialParams& p, const FEField& theta,
                          const MechanicalBC& bc, const PicardConfig& cfg, const AssemblyOptions& options) {
  return picard_solve(space, p, theta, mechanical_dirichlet(space, bc), cfg, options);
}

PicardResult picard_solve(const FESpace& space, const MaterialParams& p, const FEField& theta,
                          const DirichletMap& constraints, const PicardConfig& cfg,
                          const AssemblyOptions& options) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("Picard tolerance must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("Picard needs max_iter >= 1");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw std::invalid_argument("Picard damping must lie in (0, 1]");

  const SparseMatrix mass = assemble_mass(space, options);
  LinearSolver solver;
  SolveReport report;
  LinearSolveStats stats;

  auto solve_step = [&](const FEField& u_prev) {
    MechanicalAssemblyStats assembly_stats;
    LinearSystem system = assemble_mechanical_raw(space, p, theta, u_prev, options, &assembly_stats);
    apply_dirichlet(system, constraints);
    report.clamp_events += assembly_stats.clamp_events;
    Eigen::VectorXd x = solver.solve(system, &stats);
    report.linear_residuals.push_back(stats.relative_residual);
    return x;
  };

  // A zero previous iterate freezes the multiplier at 1: the linear problem.
  FEField u = FEField::zeros(space);
  u.values = solve_step(FEField::zeros(space));

  for (int n = 0; n < cfg.max_iter; ++n) {
    const Eigen::VectorXd solution = solve_step(u);
    Eigen::VectorXd next = cfg.damping * solution + (1.0 - cfg.damping) * u.values;
    const double increment = mass_norm(mass, next - u.values);
    u.values = std::move(next);
    report.increments.push_back(increment);
    report.iterations = n + 1;
    if (increment < cfg.tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(u), std::move(report)};
}

}  // namespace slthermo
