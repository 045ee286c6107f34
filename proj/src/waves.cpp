#include "kpwave/waves.hpp"

namespace kpwave {

namespace {

Eigen::ArrayXd cnoidal_row(const Grid& grid, const CnoidalParams<double>& p, double shift) {
  const JacobiElliptic<double> jacobi(p.k);
  const double amplitude = p.amplitude();
  Eigen::ArrayXd row(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const double c = jacobi.cn(p.kappa * (grid.x(i) - shift));
    row(i) = p.u0 + amplitude * c * c;
  }
  return row;
}

}  // namespace

RealField cnoidal_field(const Grid& grid, const CnoidalParams<double>& p, double t) {
  const Eigen::ArrayXd row = cnoidal_row(grid, p, detail::reduced_shift(p, t));
  return row.replicate(1, grid.ny);
}

RealField deformed_cnoidal_field(const Grid& grid, const CnoidalParams<double>& p,
                                 const DeformationParams& d, double t) {
  if (p.u0 != 0 || p.x0 != 0) {
    throw std::invalid_argument("deformed cnoidal data require u0 = x0 = 0");
  }
  if (!(d.delta >= 0) || !(d.ly > 0)) {
    throw std::invalid_argument("deformation needs delta >= 0 and Ly > 0");
  }
  const double travel = detail::reduced_shift(p, t);
  RealField field(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    const double shift = travel - d.delta * std::cos(4 * grid.y(j) / d.ly);
    field.col(j) = cnoidal_row(grid, p, shift);
  }
  return field;
}

RealField gaussian_perturbation_field(const Grid& grid, GaussianPerturbation g) {
  RealField field(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      field(i, j) = gaussian_perturbation_value(grid.x(i), grid.y(j), g);
    }
  }
  return field;
}

InitialData assemble_initial_data(const Grid& grid, const CnoidalParams<double>& p,
                                  const Perturbation& perturbation) {
  InitialData data;
  if (const auto* d = std::get_if<DeformationParams>(&perturbation)) {
    data.field = deformed_cnoidal_field(grid, p, *d);
  } else {
    data.field = cnoidal_field(grid, p);
    if (const auto* g = std::get_if<GaussianPerturbation>(&perturbation)) {
      data.field += gaussian_perturbation_field(grid, *g);
    }
  }
  if (!data.field.allFinite()) {
    throw std::invalid_argument("initial data contain non-finite values");
  }

  FourierTransform2d transform(grid);
  const SpectralField coeffs = transform.forward(data.field);
  data.x_mean = x_mean_profile(coeffs);
  data.constraint_defect = constraint_defect(coeffs);
  if (data.constraint_defect > kConstraintTolerance) {
    throw ConstraintViolation(data.constraint_defect);
  }
  return data;
}

RealField traveling_reference(const Grid& grid, const CnoidalParams<double>& p,
                              const Perturbation& perturbation, double t) {
  if (const auto* d = std::get_if<DeformationParams>(&perturbation)) {
    return deformed_cnoidal_field(grid, p, *d, t);
  }
  return cnoidal_field(grid, p, t);
}

}  // namespace kpwave
