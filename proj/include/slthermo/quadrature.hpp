#pragma once

#include <vector>

namespace slthermo {

struct QuadraturePoint1D {
  double x;
  double w;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
std::vector<QuadraturePoint1D> gauss_legendre(int n);

struct QuadraturePoint2D {
  double xi;
  double eta;
  double w;
};

/// Tensor-product Gauss rule on the reference square [-1, 1]^2, xi fastest.
std::vector<QuadraturePoint2D> gauss_square(int n_per_direction);

}  // namespace slthermo
