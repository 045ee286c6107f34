#pragma once

#include <Eigen/Core>

#include <complex>
#include <numbers>
#include <memory>

namespace kpwave {

/// Samples u(x_i, y_j) stored as an Nx-by-Ny column-major array, so x is the
/// fastest index in memory.
using RealField = Eigen::ArrayXXd;

/// Fourier coefficients in the real-to-complex half layout: (Nx/2 + 1)-by-Ny,
/// column jx holds xi_x = jx / Lx for jx = 0..Nx/2, row jy holds xi_y in FFT
/// order. Coefficients with xi_x < 0 follow from Hermitian symmetry.
using SpectralField = Eigen::ArrayXXcd;

/// Doubly periodic grid on [-pi Lx, pi Lx) x [-pi Ly, pi Ly).
struct Grid {
  int nx = 0;
  int ny = 0;
  double lx = 0;
  double ly = 0;
  Eigen::ArrayXd x;     // nx nodes
  Eigen::ArrayXd y;     // ny nodes
  Eigen::ArrayXd xi_x;  // nx/2 + 1 non-negative wavenumbers (half layout)
  Eigen::ArrayXd xi_y;  // ny wavenumbers in FFT order

  Grid(int nx, int ny, double lx, double ly);

  double dx() const { return 2 * std::numbers::pi * lx / nx; }
  double dy() const { return 2 * std::numbers::pi * ly / ny; }
  double area() const { return 4 * std::numbers::pi * std::numbers::pi * lx * ly; }
  int half_nx() const { return nx / 2 + 1; }

  /// Full x lattice j/Lx for j in [-nx/2, nx/2), ascending.
  Eigen::ArrayXd xi_x_full() const;

  bool same_shape(const Grid& other) const {
    return nx == other.nx && ny == other.ny && lx == other.lx && ly == other.ly;
  }
};

/// Grid whose x extent is exactly `periods` cnoidal wavelengths 2K(k)/kappa.
Grid make_grid(int nx, int ny, double kappa, double k, int periods, double ly);

/// Real 2D transform pair. Forward is the plain DFT sum; inverse carries the
/// 1/(Nx Ny) factor. Holds FFTW plans and scratch buffers, so one instance
/// must not be shared between threads.
class FourierTransform2d {
 public:
  explicit FourierTransform2d(const Grid& grid);
  ~FourierTransform2d();
  FourierTransform2d(FourierTransform2d&&) noexcept;
  FourierTransform2d& operator=(FourierTransform2d&&) noexcept;
  FourierTransform2d(const FourierTransform2d&) = delete;
  FourierTransform2d& operator=(const FourierTransform2d&) = delete;

  void forward(const RealField& f, SpectralField& out);
  void inverse(const SpectralField& coeffs, RealField& out);

  SpectralField forward(const RealField& f);
  RealField inverse(const SpectralField& coeffs);

  int nx() const;
  int ny() const;

  /// Direct access to the plan buffers for fused kernels. The inverse plan
  /// overwrites the complex buffer; neither execute call applies scaling.
  Eigen::Map<Eigen::ArrayXXd> real_buffer();
  Eigen::Map<Eigen::ArrayXXcd> complex_buffer();
  void execute_forward();
  void execute_inverse();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Number of threads used by FFTW plans created after this call.
void set_transform_threads(int threads);

/// Multiply by (i xi_x)^order_x (i xi_y)^order_y. Odd orders zero the
/// corresponding Nyquist column/row.
SpectralField spectral_derivative(const SpectralField& coeffs, const Grid& grid, int order_x,
                                  int order_y);

/// Coefficients at xi_x = 0 for every xi_y: the discrete x-means per
/// transverse mode (times Nx).
Eigen::ArrayXcd x_mean_profile(const SpectralField& coeffs);

/// Largest |u_hat(0, xi_y)| over xi_y != 0, relative to the largest
/// coefficient magnitude.
double constraint_defect(const SpectralField& coeffs);

/// Zero everything outside |jx| <= Nx/3, |jy| <= Ny/3.
void apply_two_thirds_mask(SpectralField& coeffs, const Grid& grid);

/// Sum of |u|^2 dx dy evaluated from coefficients (Parseval, half layout).
double parseval_sum(const SpectralField& coeffs, const Grid& grid);

/// Largest violation of u_hat(0, -xi_y) = conj(u_hat(0, xi_y)), relative to
/// the largest coefficient magnitude. The other self-conjugate column
/// (Nyquist) is checked as well.
double hermitian_defect(const SpectralField& coeffs);

}  // namespace kpwave
