#pragma once

#include <optional>

#include "kpwave/kp.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

/// One row of the diagnostics time series.
struct DiagnosticsRecord {
  double t = 0;
  double l2 = 0;
  double delta = 0;  // 1 - l2(t) / l2(0)
  double linf = 0;
  double energy = 0;
  double dev_linf = 0;  // NaN when no reference is configured
  double dev_l2 = 0;
};

/// sqrt(sum u^2 dx dy): the square root of the discrete mass.
double l2_norm(const RealField& f, const Grid& grid);

/// Same quantity evaluated from Fourier coefficients.
double l2_norm_spectral(const SpectralField& coeffs, const Grid& grid);

double mass_error(const DiagnosticsRecord& initial, const DiagnosticsRecord& current);

/// sum [ (u_x)^2 - u^3 / 3 + lambda (d_x^{-1} u_y)^2 ] dx dy with spectral
/// derivatives; d_x^{-1} is taken as zero on the xi_x = 0 column.
double energy(const SpectralField& coeffs, const Grid& grid, KPParams p,
              FourierTransform2d& transform);
double energy(const RealField& f, const Grid& grid, KPParams p);

struct Deviation {
  double linf = 0;
  double l2 = 0;
};

Deviation deviation(const RealField& f, const RealField& reference, const Grid& grid);

/// Fills a record from the current physical field. `reference` may be null.
DiagnosticsRecord make_record(double t, const RealField& f, const SpectralField& coeffs,
                              const Grid& grid, KPParams p, FourierTransform2d& transform,
                              const RealField* reference, std::optional<double> initial_l2);

}  // namespace kpwave
