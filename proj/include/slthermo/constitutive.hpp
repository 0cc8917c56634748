#pragma once

#include "slthermo/tensor.hpp"

namespace slthermo {

/// Guard on b * t below which the strain-limiting denominator is evaluated.
inline constexpr double kAdmissibilityGuard = 1e-8;

/// Raw material constants, before validation.
struct MaterialConstants {
  double lambda = 1.0;
  double mu = 1.0;
  double gamma = 1.0;
  double fiber_angle = 0.0;  ///< radians, m = (cos, sin)
  double a = 0.5;
  double b = 0.02;
  double alpha_T = 0.01;
  double k = 1.0;  ///< thermal conductivity

  bool operator==(const MaterialConstants&) const = default;
};

/// Validated material with its stiffness, compliance and thermal modulus.
class MaterialParams {
 public:
  /// Throws std::invalid_argument on a violated invariant and
  /// NotPositiveDefinite if the stiffness is not SPD.
  explicit MaterialParams(const MaterialConstants& constants);

  const MaterialConstants& constants() const { return c_; }
  double a() const { return c_.a; }
  double b() const { return c_.b; }
  double k() const { return c_.k; }
  /// Thermal stress modulus alpha_T (3 lambda + 2 mu).
  double alpha() const { return alpha_; }
  const Stiffness3& stiffness() const { return E_; }
  const Compliance3& compliance() const { return K_; }

 private:
  MaterialConstants c_;
  double alpha_;
  Stiffness3 E_;
  Compliance3 K_;
};

/// sigma(eps) = E[eps] / (1 - (b t)^a)^(1/a), t = energy_norm(eps).
/// Throws InadmissibleStrain when b t >= 1 - kAdmissibilityGuard.
SymTensor2 stress_from_strain(const SymTensor2& eps, const MaterialParams& p);

/// eps(sigma) = K[sigma] / (1 + (b s)^a)^(1/a), s = sqrt(sigma : K[sigma]).
SymTensor2 strain_from_stress(const SymTensor2& sigma, const MaterialParams& p);

/// Secant multiplier (1 - (b t)^a)^(-1/a) of the strain-limiting law.
double secant_factor(double t, const MaterialParams& p);

struct RelaxationFactor {
  double value = 1.0;
  bool clamped = false;
};

/// Picard multiplier frozen at the previous iterate. Energy norms beyond the
/// guarded admissible range are clamped (and flagged) instead of failing.
RelaxationFactor relaxation_factor(double t_prev, const MaterialParams& p);

/// Hyperelastic potential W(eps) = int_0^1 sigma(s eps) : eps ds, whose
/// gradient with respect to eps is stress_from_strain.
double strain_energy_density(const SymTensor2& eps, const MaterialParams& p);

/// sigma - alpha theta I.
SymTensor2 thermal_stress(const SymTensor2& sigma_mech, double theta, const MaterialParams& p);

}  // namespace slthermo
