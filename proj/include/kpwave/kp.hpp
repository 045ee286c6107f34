#pragma once

#include <string>
#include <string_view>

#include "kpwave/spectral.hpp"

namespace kpwave {

/// KP-I (lambda = -1, focusing) or KP-II (lambda = +1, defocusing).
enum class Equation { kp1, kp2 };

struct KPParams {
  Equation equation = Equation::kp1;

  double lambda() const { return equation == Equation::kp2 ? 1.0 : -1.0; }
};

std::string to_string(Equation e);
/// Accepts "kp1"/"kp2" (also "KP-I"/"KP-II"); throws std::invalid_argument.
Equation parse_equation(std::string_view name);

/// Diagonal linear part of du_hat/dt = L u_hat + N(u_hat) in the half layout.
using LinearSymbol = Eigen::ArrayXXcd;

/// L = i (xi_x^3 - lambda xi_y^2 / xi_x) for xi_x != 0, and 0 on the xi_x = 0
/// column (the regularised inverse derivative). The Nyquist column is also 0.
LinearSymbol linear_symbol(const Grid& grid, KPParams p);

/// Pseudospectral -d/dx (u^2 / 2): N(u_hat) = -(i xi_x / 2) F[(F^-1 u_hat)^2].
class KPNonlinearity {
 public:
  explicit KPNonlinearity(const Grid& grid, bool dealias = false);

  void operator()(const SpectralField& coeffs, SpectralField& out);
  SpectralField operator()(const SpectralField& coeffs);

  const Grid& grid() const { return grid_; }
  FourierTransform2d& transform() { return transform_; }

 private:
  Grid grid_;
  bool dealias_;
  FourierTransform2d transform_;
  Eigen::ArrayXcd multiplier_;  // -(i xi_x / 2) / (Nx Ny)^2, per jx
};

/// L u_hat + N(u_hat).
SpectralField rhs(const SpectralField& coeffs, const LinearSymbol& symbol,
                  KPNonlinearity& nonlinearity);

}  // namespace kpwave
