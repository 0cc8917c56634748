#include "slthermo/constitutive.hpp"

#include "slthermo/errors.hpp"
#include "slthermo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace slthermo {

InadmissibleStrain::InadmissibleStrain(double energy_norm, double b, const std::string& where)
    : Error([&] {
        std::ostringstream msg;
        msg << "inadmissible strain: b*|E^{1/2}[eps]| = " << b * energy_norm << " (energy norm " << energy_norm
            << ", b " << b << ")";
        if (!where.empty()) msg << " at " << where;
        return msg.str();
      }()),
      energy_norm_(energy_norm) {}

namespace {

const MaterialConstants& validated(const MaterialConstants& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("material invariant violated: ") + what);
  };
  require(std::isfinite(c.lambda) && c.lambda >= 0.0, "lambda >= 0");
  require(std::isfinite(c.mu) && c.mu > 0.0, "mu > 0");
  require(std::isfinite(c.gamma), "gamma finite");
  require(std::isfinite(c.fiber_angle), "fiber_angle finite");
  require(std::isfinite(c.a) && c.a > 0.0, "a > 0");
  require(std::isfinite(c.b) && c.b >= 0.0, "b >= 0");
  require(std::isfinite(c.alpha_T) && c.alpha_T >= 0.0, "alpha_T >= 0");
  require(std::isfinite(c.k) && c.k > 0.0, "k > 0");
  return c;
}

}  // namespace

MaterialParams::MaterialParams(const MaterialConstants& constants)
    : c_(validated(constants)),
      alpha_(c_.alpha_T * (3.0 * c_.lambda + 2.0 * c_.mu)),
      E_(build_stiffness(c_.lambda, c_.mu, c_.gamma, c_.fiber_angle)),
      K_(build_compliance(E_)) {}

double secant_factor(double t, const MaterialParams& p) {
  if (p.b() == 0.0 || t == 0.0) return 1.0;
  const double bt = p.b() * t;
  return std::pow(1.0 - std::pow(bt, p.a()), -1.0 / p.a());
}

SymTensor2 stress_from_strain(const SymTensor2& eps, const MaterialParams& p) {
  const SymTensor2 linear = p.stiffness().apply(eps);
  if (p.b() == 0.0) return linear;
  const double t = energy_norm(eps, p.stiffness());
  if (p.b() * t >= 1.0 - kAdmissibilityGuard) throw InadmissibleStrain(t, p.b());
  return secant_factor(t, p) * linear;
}

SymTensor2 strain_from_stress(const SymTensor2& sigma, const MaterialParams& p) {
  const SymTensor2 linear = p.compliance().apply(sigma);
  if (p.b() == 0.0) return linear;
  const double s = energy_norm(sigma, p.compliance());
  if (s == 0.0) return linear;
  // (1 + x)^(-1/a) with x = (b s)^a; computed in log form so x may be huge.
  const double log_x = p.a() * std::log(p.b() * s);
  const double log1p_x = log_x > 35.0 ? log_x + std::log1p(std::exp(-log_x)) : std::log1p(std::exp(log_x));
  return std::exp(-log1p_x / p.a()) * linear;
}

RelaxationFactor relaxation_factor(double t_prev, const MaterialParams& p) {
  if (p.b() == 0.0) return {1.0, false};
  const double t_max = (1.0 - kAdmissibilityGuard) / p.b();
  if (t_prev > t_max) return {secant_factor(t_max, p), true};
  return {secant_factor(t_prev, p), false};
}

double strain_energy_density(const SymTensor2& eps, const MaterialParams& p) {
  const double t = energy_norm(eps, p.stiffness());
  if (t == 0.0) return 0.0;
  if (p.b() * t >= 1.0 - kAdmissibilityGuard) throw InadmissibleStrain(t, p.b());
  if (p.b() == 0.0) return 0.5 * t * t;

  // W = t^2 int_0^1 s phi(s t) ds along the radial path; sigma(s eps) : eps = s t^2 phi(s t).
  // With s = u^q the kink of (s t)^a at s = 0 becomes u^(q a), q a >= 2.
  const int q = std::max(1, static_cast<int>(std::ceil(2.0 / p.a())));
  const auto rule = gauss_legendre(32);
  auto composite = [&](int panels) {
    const double h = 1.0 / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double left = k * h;
      for (const auto& g : rule) {
        const double u = left + 0.5 * h * (g.x + 1.0);
        const double s = std::pow(u, q);
        sum += 0.5 * h * g.w * q * std::pow(u, 2 * q - 1) * secant_factor(s * t, p);
      }
    }
    return sum;
  };
  int panels = 1;
  double previous = composite(panels);
  for (; panels < (1 << 16);) {
    panels *= 2;
    const double current = composite(panels);
    if (std::abs(current - previous) <= 1e-13 * std::abs(current)) return t * t * current;
    previous = current;
  }
  return t * t * previous;
}

SymTensor2 thermal_stress(const SymTensor2& sigma_mech, double theta, const MaterialParams& p) {
  return sigma_mech - (p.alpha() * theta) * SymTensor2::identity();
}

}  // namespace slthermo
