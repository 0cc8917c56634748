#pragma once

#include "slthermo/assembly.hpp"

#include <Eigen/SparseCholesky>

#include <memory>
#include <vector>

namespace slthermo {

/// Relative residual the linear solve must reach.
inline constexpr double kLinearSolveTolerance = 1e-12;

struct LinearSolveStats {
  double relative_residual = 0.0;
  int refinement_steps = 0;
};

/// Sparse Cholesky (AMD ordering) with iterative refinement. The symbolic
/// analysis is reused while the sparsity pattern stays the same.
class LinearSolver {
 public:
  /// Throws SolverBreakdown if the matrix is not SPD or the residual
  /// contract cannot be met.
  Eigen::VectorXd solve(const LinearSystem& system, LinearSolveStats* stats = nullptr);

 private:
  using Factorization = Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;
  std::unique_ptr<Factorization> factorization_;
  Eigen::Index analyzed_size_ = -1;
  Eigen::Index analyzed_nnz_ = -1;
};

Eigen::VectorXd linear_solve(const LinearSystem& system, LinearSolveStats* stats = nullptr);

/// Source term for the heat equation; empty means Q = 0.
FEField solve_thermal(const FESpace& space, const MaterialParams& p, const ScalarFunction& source,
                      const ThermalBC& bc, const AssemblyOptions& options = {});

struct PicardConfig {
  double tol = 1e-8;
  int max_iter = 100;
  double damping = 1.0;

  bool operator==(const PicardConfig&) const = default;
};

struct SolveReport {
  int iterations = 0;
  /// L2 norms |u^{n+1} - u^n|, one per iteration.
  std::vector<double> increments;
  bool converged = false;
  std::size_t clamp_events = 0;
  /// Relative residual of the linear solve of each iteration (initializer first).
  std::vector<double> linear_residuals;
};

struct PicardResult {
  FEField displacement;
  SolveReport report;
};

/// Picard iteration for the strain-limiting mechanical problem: u^0 solves the
/// linear (b = 0) problem, then the secant multiplier is frozen at u^n to get
/// u^{n+1}. Stops when the L2 increment drops below cfg.tol or after
/// cfg.max_iter iterations; non-convergence is reported, not thrown.
PicardResult picard_solve(const FESpace& space, const MaterialParams& p, const FEField& theta,
                          const MechanicalBC& bc, const PicardConfig& cfg, const AssemblyOptions& options = {});

/// Same as picard_solve with arbitrary Dirichlet data.
PicardResult picard_solve(const FESpace& space, const MaterialParams& p, const FEField& theta,
                          const DirichletMap& constraints, const PicardConfig& cfg,
                          const AssemblyOptions& options = {});

/// sqrt(v^T M v).
double mass_norm(const SparseMatrix& mass, const Eigen::VectorXd& v);

}  // namespace slthermo
