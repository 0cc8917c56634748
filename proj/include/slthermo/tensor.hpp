#pragma once

#include <Eigen/Dense>

#include <array>

namespace slthermo {

/// Symmetric 2x2 tensor stored in Mandel form (t11, t22, sqrt(2) t12).
///
/// The Mandel basis is orthonormal, so the Frobenius product of two tensors
/// is the Euclidean dot product of their component vectors.
class SymTensor2 {
 public:
  SymTensor2() = default;
  explicit SymTensor2(const Eigen::Vector3d& mandel) : m_(mandel) {}
  SymTensor2(double m1, double m2, double m3) : m_(m1, m2, m3) {}

  static SymTensor2 from_components(double t11, double t22, double t12);
  static SymTensor2 identity() { return {1.0, 1.0, 0.0}; }
  static SymTensor2 zero() { return {0.0, 0.0, 0.0}; }

  const Eigen::Vector3d& mandel() const { return m_; }
  double operator[](int i) const { return m_[i]; }

  double t11() const { return m_[0]; }
  double t22() const { return m_[1]; }
  double t12() const;
  double trace() const { return m_[0] + m_[1]; }

  /// Double contraction A:B.
  double dot(const SymTensor2& other) const { return m_.dot(other.m_); }
  double norm() const { return m_.norm(); }

  /// Eigenvalues, largest first.
  std::array<double, 2> principal_values() const;

  SymTensor2& operator+=(const SymTensor2& o) { m_ += o.m_; return *this; }
  SymTensor2& operator-=(const SymTensor2& o) { m_ -= o.m_; return *this; }
  SymTensor2& operator*=(double s) { m_ *= s; return *this; }

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }

 private:
  Eigen::Vector3d m_ = Eigen::Vector3d::Zero();
};

/// Fourth-order symmetric stiffness operator as a 3x3 SPD Mandel matrix.
class Stiffness3 {
 public:
  /// Validates symmetry and positive definiteness.
  explicit Stiffness3(const Eigen::Matrix3d& entries);

  const Eigen::Matrix3d& entries() const { return entries_; }
  double min_eigenvalue() const { return min_eig_; }
  double max_eigenvalue() const { return max_eig_; }

  SymTensor2 apply(const SymTensor2& eps) const { return SymTensor2(entries_ * eps.mandel()); }

 private:
  Eigen::Matrix3d entries_;
  double min_eig_ = 0.0;
  double max_eig_ = 0.0;
};

/// Inverse of a Stiffness3.
class Compliance3 {
 public:
  const Eigen::Matrix3d& entries() const { return entries_; }
  SymTensor2 apply(const SymTensor2& sigma) const { return SymTensor2(entries_ * sigma.mandel()); }

 private:
  friend Compliance3 build_compliance(const Stiffness3& stiffness);
  explicit Compliance3(const Eigen::Matrix3d& entries) : entries_(entries) {}
  Eigen::Matrix3d entries_;
};

/// Mandel vector of the structural tensor m (x) m with m = (cos angle, sin angle).
SymTensor2 structural_tensor(double fiber_angle);

/// Transversely isotropic stiffness 2 mu I + lambda (1,1,0)(1,1,0)^T + gamma vM vM^T.
/// Throws NotPositiveDefinite if the result is not SPD.
Stiffness3 build_stiffness(double lambda, double mu, double gamma, double fiber_angle);

Compliance3 build_compliance(const Stiffness3& stiffness);

/// sqrt(eps : E[eps]), which equals |E^{1/2}[eps]| for SPD E.
double energy_norm(const SymTensor2& eps, const Stiffness3& stiffness);

/// sqrt(sigma : K[sigma]).
double energy_norm(const SymTensor2& sigma, const Compliance3& compliance);

}  // namespace slthermo
