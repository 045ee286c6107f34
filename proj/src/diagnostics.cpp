#include "kpwave/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kpwave {

double l2_norm(const RealField& f, const Grid& grid) {
  return std::sqrt(f.square().sum() * grid.dx() * grid.dy());
}

double l2_norm_spectral(const SpectralField& coeffs, const Grid& grid) {
  return std::sqrt(parseval_sum(coeffs, grid));
}

double mass_error(const DiagnosticsRecord& initial, const DiagnosticsRecord& current) {
  return 1 - current.l2 / initial.l2;
}

double energy(const SpectralField& coeffs, const Grid& grid, KPParams p,
              FourierTransform2d& transform) {
  const RealField u = transform.inverse(coeffs);
  const RealField ux = transform.inverse(spectral_derivative(coeffs, grid, 1, 0));

  // d_x^{-1} d_y: multiplier xi_y / xi_x, odd in both directions.
  SpectralField w = spectral_derivative(coeffs, grid, 0, 1);
  Eigen::ArrayXcd inv_dx(grid.half_nx());
  inv_dx(0) = 0;
  for (int jx = 1; jx < grid.half_nx(); ++jx) {
    inv_dx(jx) = std::complex<double>(0, -1.0 / grid.xi_x(jx));
  }
  inv_dx(grid.nx / 2) = 0;
  w.colwise() *= inv_dx;
  const RealField wy = transform.inverse(w);

  const double density = (ux.square() - u.cube() / 3 + p.lambda() * wy.square()).sum();
  return density * grid.dx() * grid.dy();
}

double energy(const RealField& f, const Grid& grid, KPParams p) {
  FourierTransform2d transform(grid);
  return energy(transform.forward(f), grid, p, transform);
}

Deviation deviation(const RealField& f, const RealField& reference, const Grid& grid) {
  if (f.rows() != reference.rows() || f.cols() != reference.cols()) {
    throw std::invalid_argument("deviation: field and reference shapes differ");
  }
  const RealField diff = f - reference;
  return {diff.abs().maxCoeff(), l2_norm(diff, grid)};
}

DiagnosticsRecord make_record(double t, const RealField& f, const SpectralField& coeffs,
                              const Grid& grid, KPParams p, FourierTransform2d& transform,
                              const RealField* reference, std::optional<double> initial_l2) {
  DiagnosticsRecord r;
  r.t = t;
  r.l2 = l2_norm(f, grid);
  r.delta = initial_l2 ? 1 - r.l2 / *initial_l2 : 0.0;
  r.linf = f.abs().maxCoeff();
  r.energy = energy(coeffs, grid, p, transform);
  if (reference != nullptr) {
    const Deviation d = deviation(f, *reference, grid);
    r.dev_linf = d.linf;
    r.dev_l2 = d.l2;
  } else {
    r.dev_linf = std::numeric_limits<double>::quiet_NaN();
    r.dev_l2 = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace kpwave
