#include "kpwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

#include "kpwave/elliptic.hpp"

namespace kpwave {

namespace {

// FFTW planner calls are not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

Eigen::ArrayXd fft_order_wavenumbers(int n, double scale) {
  Eigen::ArrayXd xi(n);
  for (int j = 0; j < n; ++j) {
    const int signed_j = j < n / 2 ? j : j - n;
    xi(j) = signed_j / scale;
  }
  return xi;
}

}  // namespace

Grid::Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
    throw std::invalid_argument("grid mode counts must be even and >= 4, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (!(lx > 0) || !(ly > 0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("grid scale factors must be positive and finite");
  }
  x = -std::numbers::pi * lx + Eigen::ArrayXd::LinSpaced(nx, 0, nx - 1) * dx();
  y = -std::numbers::pi * ly + Eigen::ArrayXd::LinSpaced(ny, 0, ny - 1) * dy();
  xi_x = Eigen::ArrayXd::LinSpaced(half_nx(), 0, nx / 2) / lx;
  xi_y = fft_order_wavenumbers(ny, ly);
}

Eigen::ArrayXd Grid::xi_x_full() const {
  return Eigen::ArrayXd::LinSpaced(nx, -nx / 2, nx / 2 - 1) / lx;
}

Grid make_grid(int nx, int ny, double kappa, double k, int periods, double ly) {
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be positive and finite");
  }
  if (periods < 1) {
    throw std::invalid_argument("number of cnoidal periods must be >= 1");
  }
  const double quarter = complete_elliptic_k(k);
  return Grid(nx, ny, periods * quarter / (std::numbers::pi * kappa), ly);
}

struct FourierTransform2d::Impl {
  int nx;
  int ny;
  double* real_buf = nullptr;
  fftw_complex* complex_buf = nullptr;
  fftw_plan forward_plan = nullptr;
  fftw_plan inverse_plan = nullptr;

  Impl(int nx_, int ny_) : nx(nx_), ny(ny_) {
    const std::size_t n_real = static_cast<std::size_t>(nx) * ny;
    const std::size_t n_complex = static_cast<std::size_t>(nx / 2 + 1) * ny;
    real_buf = fftw_alloc_real(n_real);
    complex_buf = fftw_alloc_complex(n_complex);
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE keeps plan selection, and therefore rounding, reproducible
    // from run to run.
    forward_plan = fftw_plan_dft_r2c_2d(ny, nx, real_buf, complex_buf, FFTW_ESTIMATE);
    inverse_plan = fftw_plan_dft_c2r_2d(ny, nx, complex_buf, real_buf, FFTW_ESTIMATE);
    if (forward_plan == nullptr || inverse_plan == nullptr) {
      throw std::runtime_error("FFTW plan creation failed");
    }
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_plan);
    fftw_destroy_plan(inverse_plan);
    fftw_free(real_buf);
    fftw_free(complex_buf);
  }
};

FourierTransform2d::FourierTransform2d(const Grid& grid)
    : impl_(std::make_unique<Impl>(grid.nx, grid.ny)) {}
FourierTransform2d::~FourierTransform2d() = default;
FourierTransform2d::FourierTransform2d(FourierTransform2d&&) noexcept = default;
FourierTransform2d& FourierTransform2d::operator=(FourierTransform2d&&) noexcept = default;

int FourierTransform2d::nx() const { return impl_->nx; }
int FourierTransform2d::ny() const { return impl_->ny; }

Eigen::Map<Eigen::ArrayXXd> FourierTransform2d::real_buffer() {
  return {impl_->real_buf, impl_->nx, impl_->ny};
}

Eigen::Map<Eigen::ArrayXXcd> FourierTransform2d::complex_buffer() {
  return {reinterpret_cast<std::complex<double>*>(impl_->complex_buf), impl_->nx / 2 + 1,
          impl_->ny};
}

void FourierTransform2d::execute_forward() { fftw_execute(impl_->forward_plan); }
void FourierTransform2d::execute_inverse() { fftw_execute(impl_->inverse_plan); }

void FourierTransform2d::forward(const RealField& f, SpectralField& out) {
  if (f.rows() != impl_->nx || f.cols() != impl_->ny) {
    throw std::invalid_argument("forward transform: field shape does not match grid");
  }
  std::memcpy(impl_->real_buf, f.data(), sizeof(double) * f.size());
  fftw_execute(impl_->forward_plan);
  out.resize(impl_->nx / 2 + 1, impl_->ny);
  std::memcpy(static_cast<void*>(out.data()), impl_->complex_buf,
              sizeof(fftw_complex) * out.size());
}

void FourierTransform2d::inverse(const SpectralField& coeffs, RealField& out) {
  if (coeffs.rows() != impl_->nx / 2 + 1 || coeffs.cols() != impl_->ny) {
    throw std::invalid_argument("inverse transform: coefficient shape does not match grid");
  }
  std::memcpy(impl_->complex_buf, static_cast<const void*>(coeffs.data()),
              sizeof(fftw_complex) * coeffs.size());
  fftw_execute(impl_->inverse_plan);
  out.resize(impl_->nx, impl_->ny);
  const double scale = 1.0 / (static_cast<double>(impl_->nx) * impl_->ny);
  out = Eigen::Map<const Eigen::ArrayXXd>(impl_->real_buf, impl_->nx, impl_->ny) * scale;
}

SpectralField FourierTransform2d::forward(const RealField& f) {
  SpectralField out;
  forward(f, out);
  return out;
}

RealField FourierTransform2d::inverse(const SpectralField& coeffs) {
  RealField out;
  inverse(coeffs, out);
  return out;
}

void set_transform_threads(int threads) {
  static std::once_flag init;
  std::call_once(init, [] { fftw_init_threads(); });
  std::lock_guard lock(planner_mutex());
  fftw_plan_with_nthreads(std::max(1, threads));
}

SpectralField spectral_derivative(const SpectralField& coeffs, const Grid& grid, int order_x,
                                  int order_y) {
  using namespace std::complex_literals;
  const std::complex<double> ix_pow = std::pow(1i, order_x);
  const std::complex<double> iy_pow = std::pow(1i, order_y);
  Eigen::ArrayXcd mx = ix_pow * grid.xi_x.pow(order_x).cast<std::complex<double>>();
  Eigen::ArrayXcd my = iy_pow * grid.xi_y.pow(order_y).cast<std::complex<double>>();
  if (order_x % 2 == 1) {
    mx(grid.nx / 2) = 0;
  }
  if (order_y % 2 == 1) {
    my(grid.ny / 2) = 0;
  }
  return coeffs * (mx.matrix() * my.matrix().transpose()).array();
}

Eigen::ArrayXcd x_mean_profile(const SpectralField& coeffs) { return coeffs.row(0).transpose(); }

double constraint_defect(const SpectralField& coeffs) {
  const double peak = coeffs.abs().maxCoeff();
  if (peak == 0) {
    return 0;
  }
  const auto column = coeffs.row(0).tail(coeffs.cols() - 1);
  return column.abs().maxCoeff() / peak;
}

void apply_two_thirds_mask(SpectralField& coeffs, const Grid& grid) {
  const int cut_x = grid.nx / 3;
  const int cut_y = grid.ny / 3;
  for (Eigen::Index jy = 0; jy < coeffs.cols(); ++jy) {
    const int signed_jy = jy < grid.ny / 2 ? static_cast<int>(jy) : static_cast<int>(jy) - grid.ny;
    if (std::abs(signed_jy) > cut_y) {
      coeffs.col(jy).setZero();
      continue;
    }
    for (Eigen::Index jx = cut_x + 1; jx < coeffs.rows(); ++jx) {
      coeffs(jx, jy) = 0;
    }
  }
}

double parseval_sum(const SpectralField& coeffs, const Grid& grid) {
  const Eigen::ArrayXXd power = coeffs.abs2();
  double total = 2 * power.sum() - power.row(0).sum();
  if (grid.nx % 2 == 0) {
    total -= power.row(grid.nx / 2).sum();
  }
  const double n = static_cast<double>(grid.nx) * grid.ny;
  return total * grid.dx() * grid.dy() / n;
}

double hermitian_defect(const SpectralField& coeffs) {
  const double peak = coeffs.abs().maxCoeff();
  if (peak == 0) {
    return 0;
  }
  const Eigen::Index ny = coeffs.cols();
  double worst = 0;
  for (Eigen::Index row : {Eigen::Index{0}, coeffs.rows() - 1}) {
    for (Eigen::Index jy = 0; jy < ny; ++jy) {
      const Eigen::Index mirror = (ny - jy) % ny;
      worst = std::max(worst, std::abs(coeffs(row, jy) - std::conj(coeffs(row, mirror))));
    }
  }
  return worst / peak;
}

}  // namespace kpwave
