#include "slthermo/tensor.hpp"

#include "slthermo/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace slthermo {

SymTensor2 SymTensor2::from_components(double t11, double t22, double t12) {
  return {t11, t22, std::numbers::sqrt2 * t12};
}

double SymTensor2::t12() const { return m_[2] / std::numbers::sqrt2; }

std::array<double, 2> SymTensor2::principal_values() const {
  const double mean = 0.5 * (m_[0] + m_[1]);
  const double half_diff = 0.5 * (m_[0] - m_[1]);
  const double radius = std::hypot(half_diff, t12());
  return {mean + radius, mean - radius};
}

Stiffness3::Stiffness3(const Eigen::Matrix3d& entries) : entries_(entries) {
  const double scale = entries.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !entries.allFinite()) {
    throw NotPositiveDefinite("stiffness matrix is zero or not finite");
  }
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotPositiveDefinite("stiffness matrix is not symmetric");
  }
  entries_ = 0.5 * (entries + entries.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(entries_, Eigen::EigenvaluesOnly);
  min_eig_ = eig.eigenvalues().minCoeff();
  max_eig_ = eig.eigenvalues().maxCoeff();
  if (!(min_eig_ > 1e-14 * scale)) {
    std::ostringstream msg;
    msg << "stiffness matrix is not positive definite (min eigenvalue " << min_eig_ << ")";
    throw NotPositiveDefinite(msg.str());
  }
}

SymTensor2 structural_tensor(double fiber_angle) {
  const double c = std::cos(fiber_angle);
  const double s = std::sin(fiber_angle);
  return SymTensor2::from_components(c * c, s * s, c * s);
}

Stiffness3 build_stiffness(double lambda, double mu, double gamma, double fiber_angle) {
  if (!(lambda >= 0.0) || !(mu > 0.0)) {
    std::ostringstream msg;
    msg << "Lame parameters must satisfy lambda >= 0, mu > 0 (got lambda=" << lambda << ", mu=" << mu << ")";
    throw NotPositiveDefinite(msg.str());
  }
  const Eigen::Vector3d trace_dir(1.0, 1.0, 0.0);
  const Eigen::Vector3d fiber = structural_tensor(fiber_angle).mandel();
  Eigen::Matrix3d entries = 2.0 * mu * Eigen::Matrix3d::Identity();
  entries += lambda * trace_dir * trace_dir.transpose();
  entries += gamma * fiber * fiber.transpose();
  return Stiffness3(entries);
}

Compliance3 build_compliance(const Stiffness3& stiffness) {
  const Eigen::LLT<Eigen::Matrix3d> llt(stiffness.entries());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky factorization of the stiffness failed");
  }
  Eigen::Matrix3d inverse = llt.solve(Eigen::Matrix3d::Identity());
  inverse = 0.5 * (inverse + inverse.transpose());
  return Compliance3(inverse);
}

double energy_norm(const SymTensor2& eps, const Stiffness3& stiffness) {
  const double q = eps.mandel().dot(stiffness.entries() * eps.mandel());
  return std::sqrt(std::max(q, 0.0));
}

double energy_norm(const SymTensor2& sigma, const Compliance3& compliance) {
  const double q = sigma.mandel().dot(compliance.entries() * sigma.mandel());
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace slthermo
