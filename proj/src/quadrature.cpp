#include "slthermo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace slthermo {

namespace {

std::vector<QuadraturePoint1D> compute_gauss_legendre(int n) {
  std::vector<QuadraturePoint1D> rule(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1) rule[n / 2].x = 0.0;
  return rule;
}

}  // namespace

std::vector<QuadraturePoint1D> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
  static std::mutex mutex;
  static std::map<int, std::vector<QuadraturePoint1D>> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<QuadraturePoint2D> gauss_square(int n_per_direction) {
  const auto line = gauss_legendre(n_per_direction);
  std::vector<QuadraturePoint2D> rule;
  rule.reserve(line.size() * line.size());
  for (const auto& qy : line) {
    for (const auto& qx : line) rule.push_back({qx.x, qy.x, qx.w * qy.w});
  }
  return rule;
}

}  // namespace slthermo
