#include "kpwave/kp.hpp"

#include <stdexcept>

namespace kpwave {

std::string to_string(Equation e) { return e == Equation::kp1 ? "kp1" : "kp2"; }

Equation parse_equation(std::string_view name) {
  if (name == "kp1" || name == "KP-I" || name == "kpi") {
    return Equation::kp1;
  }
  if (name == "kp2" || name == "KP-II" || name == "kpii") {
    return Equation::kp2;
  }
  throw std::invalid_argument("unknown equation '" + std::string(name) + "' (expected kp1|kp2)");
}

LinearSymbol linear_symbol(const Grid& grid, KPParams p) {
  const double lambda = p.lambda();
  LinearSymbol symbol(grid.half_nx(), grid.ny);
  for (int jy = 0; jy < grid.ny; ++jy) {
    const double ky2 = grid.xi_y(jy) * grid.xi_y(jy);
    symbol(0, jy) = 0;
    for (int jx = 1; jx < grid.half_nx(); ++jx) {
      const double kx = grid.xi_x(jx);
      symbol(jx, jy) = std::complex<double>(0, kx * kx * kx - lambda * ky2 / kx);
    }
    symbol(grid.nx / 2, jy) = 0;
  }
  return symbol;
}

KPNonlinearity::KPNonlinearity(const Grid& grid, bool dealias)
    : grid_(grid), dealias_(dealias), transform_(grid) {
  const double n = static_cast<double>(grid.nx) * grid.ny;
  multiplier_ = std::complex<double>(0, -0.5 / (n * n)) * grid.xi_x.cast<std::complex<double>>();
  multiplier_(grid.nx / 2) = 0;
}

void KPNonlinearity::operator()(const SpectralField& coeffs, SpectralField& out) {
  if (coeffs.rows() != grid_.half_nx() || coeffs.cols() != grid_.ny) {
    throw std::invalid_argument("nonlinear term: coefficient shape does not match grid");
  }
  // Unnormalised transforms: the 1/(Nx Ny)^2 of squaring u is folded into
  // the multiplier.
  auto spectral = transform_.complex_buffer();
  auto physical = transform_.real_buffer();
  spectral = coeffs;
  transform_.execute_inverse();
  physical = physical.square();
  transform_.execute_forward();
  out.resize(coeffs.rows(), coeffs.cols());
  out = spectral.colwise() * multiplier_;
  if (dealias_) {
    apply_two_thirds_mask(out, grid_);
  }
}

SpectralField KPNonlinearity::operator()(const SpectralField& coeffs) {
  SpectralField out;
  (*this)(coeffs, out);
  return out;
}

SpectralField rhs(const SpectralField& coeffs, const LinearSymbol& symbol,
                  KPNonlinearity& nonlinearity) {
  return symbol * coeffs + nonlinearity(coeffs);
}

}  // namespace kpwave
