#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpwave/elliptic.hpp"
#include "kpwave/spectral.hpp"
#include "kpwave/waves.hpp"

using namespace kpwave;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(Grid(63, 16, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 16, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(64, 16, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 16, 0.5, 0.5, 0, 2), std::invalid_argument);

  const Grid g = make_grid(1024, 256, 0.5, 0.5, 8, 2);
  const double quarter = complete_elliptic_k(0.5);
  CHECK(2 * kPi * g.lx == doctest::Approx(32 * quarter).epsilon(1e-15));
  CHECK(g.x(0) == doctest::Approx(-kPi * g.lx).epsilon(1e-15));
  CHECK(g.x(g.nx - 1) + g.dx() == doctest::Approx(kPi * g.lx).epsilon(1e-14));
  CHECK(g.y(0) == doctest::Approx(-2 * kPi).epsilon(1e-15));
  CHECK(g.y(g.ny - 1) + g.dy() == doctest::Approx(2 * kPi).epsilon(1e-14));

  CHECK(g.xi_x(0) == 0);
  CHECK(g.xi_x(g.nx / 2) == doctest::Approx(g.nx / (2 * g.lx)));
  const auto full = g.xi_x_full();
  CHECK(full(0) == doctest::Approx(-g.nx / (2 * g.lx)));
  CHECK((full == 0).count() == 1);
  CHECK((g.xi_y == 0).count() == 1);
  CHECK(g.xi_y(g.ny / 2) == doctest::Approx(-g.ny / (2 * g.ly)));
}

TEST_CASE("transform of simple fields") {
  const Grid g(32, 16, 1.3, 0.7);
  FourierTransform2d t(g);

  const SpectralField c = t.forward(RealField::Constant(g.nx, g.ny, 2.5));
  CHECK(std::abs(c(0, 0) - 2.5 * g.nx * g.ny) < 1e-10);
  CHECK(c.abs().sum() - std::abs(c(0, 0)) < 1e-10);

  RealField f(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) f.col(j) = (g.x / g.lx).cos();
  const SpectralField fc = t.forward(f);
  // cos(x/Lx) -> coefficient N/2 at xi_x = 1/Lx (and its conjugate, implied).
  CHECK(std::abs(fc(1, 0) - std::complex<double>(-0.5 * g.nx * g.ny, 0)) < 1e-9);
  CHECK(fc.abs().sum() - std::abs(fc(1, 0)) < 1e-9);

  CHECK_THROWS_AS(t.forward(RealField::Zero(g.nx + 2, g.ny)), std::invalid_argument);
  CHECK_THROWS_AS(t.inverse(SpectralField::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("round trip on random fields") {
  for (auto [nx, ny] : {std::pair{64, 16}, std::pair{256, 64}, std::pair{1024, 256}}) {
    const Grid g(nx, ny, 2.1, 2);
    FourierTransform2d t(g);
    const RealField f = RealField::Random(nx, ny);
    const RealField back = t.inverse(t.forward(f));
    CAPTURE(nx);
    CHECK((back - f).abs().maxCoeff() <= 1e-13 * f.abs().maxCoeff());
  }
}

TEST_CASE("Parseval and Hermitian symmetry") {
  const Grid g(128, 32, 1.7, 2);
  FourierTransform2d t(g);
  const RealField f = RealField::Random(g.nx, g.ny) + 0.3;
  const SpectralField c = t.forward(f);
  const double physical = f.square().sum() * g.dx() * g.dy();
  CHECK(std::abs(parseval_sum(c, g) - physical) <= 1e-12 * physical);
  CHECK(hermitian_defect(c) <= 1e-13);

  const SpectralField d = spectral_derivative(c, g, 1, 1);
  CHECK(hermitian_defect(d) <= 1e-13);
}

TEST_CASE("spectral derivatives of trigonometric fields") {
  const Grid g(64, 16, 1.9, 1.1);
  FourierTransform2d t(g);
  const double k1 = 1 / g.lx;
  const double k3 = 3 / g.ly;
  RealField f(g.nx, g.ny);
  RealField fx(g.nx, g.ny);
  RealField fxxx(g.nx, g.ny);
  RealField fy(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      const double y = g.y(j);
      f(i, j) = std::sin(k1 * x) * std::cos(k3 * y);
      fx(i, j) = k1 * std::cos(k1 * x) * std::cos(k3 * y);
      fxxx(i, j) = -k1 * k1 * k1 * std::cos(k1 * x) * std::cos(k3 * y);
      fy(i, j) = -k3 * std::sin(k1 * x) * std::sin(k3 * y);
    }
  }
  const SpectralField c = t.forward(f);
  CHECK((t.inverse(spectral_derivative(c, g, 1, 0)) - fx).abs().maxCoeff() <= 1e-13);
  // Roundoff in the coefficients is amplified by |xi_x|^3 ~ (Nx / 2Lx)^3.
  CHECK((t.inverse(spectral_derivative(c, g, 3, 0)) - fxxx).abs().maxCoeff() <= 1e-11);
  CHECK((t.inverse(spectral_derivative(c, g, 0, 1)) - fy).abs().maxCoeff() <= 1e-13);
}

TEST_CASE("odd derivatives drop the Nyquist modes") {
  const Grid g(16, 8, 1, 1);
  SpectralField c = SpectralField::Zero(g.half_nx(), g.ny);
  c(g.nx / 2, 0) = 1;
  c(1, g.ny / 2) = 1;
  const SpectralField dx = spectral_derivative(c, g, 1, 0);
  CHECK(dx(g.nx / 2, 0) == std::complex<double>(0));
  CHECK(std::abs(dx(1, g.ny / 2)) > 0);
  const SpectralField dy = spectral_derivative(c, g, 0, 3);
  CHECK(dy(1, g.ny / 2) == std::complex<double>(0));
  const SpectralField dxx = spectral_derivative(c, g, 2, 0);
  CHECK(std::abs(dxx(g.nx / 2, 0)) > 0);
}

TEST_CASE("third derivative of the cnoidal wave converges like a 4th-order stencil") {
  // The centred 7-point stencil for u''' is O(h^4); its error against the
  // spectral derivative must shrink ~16x per grid doubling.
  const CnoidalParams<double> p(0.5, 0.5);
  auto stencil_error = [&](int nx) {
    const Grid g = make_grid(nx, 4, p.kappa, 0.5, 2, 2);
    FourierTransform2d t(g);
    const RealField u = cnoidal_field(g, p);
    const RealField spectral = t.inverse(spectral_derivative(t.forward(u), g, 3, 0));
    const double h = g.dx();
    double worst = 0;
    for (int i = 0; i < nx; ++i) {
      auto at = [&](int s) { return u((i + s + nx) % nx, 0); };
      const double fd =
          (-at(3) + 8 * at(2) - 13 * at(1) + 13 * at(-1) - 8 * at(-2) + at(-3)) / (8 * h * h * h);
      worst = std::max(worst, std::abs(fd - spectral(i, 0)));
    }
    return worst;
  };
  const double coarse = stencil_error(64);
  const double fine = stencil_error(128);
  CHECK(coarse / fine > 12);
  CHECK(coarse / fine < 20);
}

TEST_CASE("cnoidal spectrum is resolved at the default resolution") {
  for (double kappa : {0.5, 2.0}) {
    const CnoidalParams<double> p(kappa, 0.5);
    const Grid g = make_grid(1024, 8, kappa, 0.5, 8, 2);
    FourierTransform2d t(g);
    const SpectralField c = t.forward(cnoidal_field(g, p));
    CAPTURE(kappa);
    CHECK(std::abs(c(g.nx / 2, 0)) <= 1e-10 * c.abs().maxCoeff());
  }
}

TEST_CASE("x-mean profile and constraint defect") {
  const Grid g = make_grid(256, 32, 2, 0.5, 8, 2);
  FourierTransform2d t(g);
  const SpectralField cn = t.forward(cnoidal_field(g, CnoidalParams<double>(2, 0.5)));
  const Eigen::ArrayXcd profile = x_mean_profile(cn);
  CHECK(profile.size() == g.ny);
  CHECK(std::abs(profile(0)) > 0);
  CHECK(profile.tail(g.ny - 1).abs().maxCoeff() <= 1e-12 * std::abs(profile(0)));
  CHECK(constraint_defect(cn) <= 1e-15);

  const SpectralField gp = t.forward(gaussian_perturbation_field(g, {1.0}));
  CHECK(x_mean_profile(gp).abs().maxCoeff() <= 1e-15 * g.nx);

  const SpectralField def =
      t.forward(deformed_cnoidal_field(g, CnoidalParams<double>(2, 0.5), {0.4, 2}));
  CHECK(constraint_defect(def) <= 1e-12);

  // A y-dependent mean is flagged.
  RealField bad = RealField::Zero(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) bad.col(j).setConstant(std::cos(4 * g.y(j) / g.ly));
  CHECK(constraint_defect(t.forward(bad)) > 0.1);
}

TEST_CASE("two-thirds mask") {
  const Grid g(12, 6, 1, 1);
  SpectralField c = SpectralField::Ones(g.half_nx(), g.ny);
  apply_two_thirds_mask(c, g);
  CHECK(c(4, 0) == std::complex<double>(1));
  CHECK(c(5, 0) == std::complex<double>(0));
  CHECK(c(0, 2) == std::complex<double>(1));
  CHECK(c(0, 3) == std::complex<double>(0));
  CHECK(c(0, 4) == std::complex<double>(1));
}
