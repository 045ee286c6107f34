#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kpwave/etd.hpp"
#include "kpwave/kp.hpp"
#include "kpwave/waves.hpp"

using namespace kpwave;
using cd = std::complex<double>;
using Vec = Eigen::ArrayXcd;

namespace {

Vec scalar(cd v) { return Vec::Constant(1, v); }

// Classical RK4 for u' = i u + u^2 with a tiny step; reference solution.
cd rk4_reference(cd u, double t_end, int steps) {
  auto f = [](cd v) { return cd(0, 1) * v + v * v; };
  const double h = t_end / steps;
  for (int n = 0; n < steps; ++n) {
    const cd k1 = f(u);
    const cd k2 = f(u + h / 2 * k1);
    const cd k3 = f(u + h / 2 * k2);
    const cd k4 = f(u + h * k3);
    u += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

cd etd_solve(cd u0, double t_end, int steps) {
  Vec u = scalar(u0);
  const Vec symbol = scalar(cd(0, 1));
  const auto c = make_etd_coefficients(symbol, t_end / steps);
  EtdWorkspace<Vec> ws;
  auto square = [](const Vec& in, Vec& out) { out = in.square(); };
  for (int n = 0; n < steps; ++n) etdrk4_step(u, c, square, ws);
  return u(0);
}

}  // namespace

TEST_CASE("phi functions") {
  const auto zero = phi_functions(0.0);
  CHECK(zero[0] == cd(1));
  CHECK(zero[1] == cd(0.5));
  CHECK(zero[2] == cd(1.0 / 6));

  const cd i(0, 1);
  CHECK(std::abs(phi_functions(i)[0] - (std::exp(i) - 1.0) / i) <= 1e-13);

  // Contour mean against the closed form where the latter is still accurate.
  for (double r : {0.4, 0.45, 0.5, 0.55, 0.6}) {
    for (double arg : {0.0, 0.7, 1.5707963267948966, 2.5, -1.2}) {
      const cd z = std::polar(r, arg);
      const auto a = phi_functions_contour(z);
      const auto b = phi_functions_direct(z);
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(a[k] - b[k]) <= 1e-11 * std::abs(b[k]));
      }
    }
  }

  // Small |z|: Taylor oracle phi_k(z) = sum_j z^j / (j + k)!.
  for (double r : {1e-10, 1e-6, 1e-3, 0.1}) {
    const cd z(0, r);
    const auto p = phi_functions(z);
    for (int k = 1; k <= 3; ++k) {
      cd sum = 0;
      cd term = 1;
      double fact = 1;
      for (int j = 1; j <= k; ++j) fact *= j;
      for (int j = 0; j < 25; ++j) {
        sum += term / fact;
        term *= z;
        fact *= (j + k + 1);
      }
      CHECK(std::abs(p[k - 1] - sum) <= 1e-12 * std::abs(sum));
    }
  }
}

TEST_CASE("coefficients at L = 0 reduce to RK4 weights") {
  const double h = 0.01;
  const auto c = make_etd_coefficients(scalar(0.0), h);
  CHECK(c.e(0) == cd(1));
  CHECK(c.e2(0) == cd(1));
  CHECK(std::abs(c.q(0) - h / 2) <= 1e-18);
  CHECK(std::abs(c.f1(0) - h / 6) <= 1e-17);
  CHECK(std::abs(c.f2(0) - h / 6) <= 1e-17);
  CHECK(std::abs(c.f3(0) - h / 6) <= 1e-17);
  CHECK_THROWS_AS(make_etd_coefficients(scalar(0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_etd_coefficients(scalar(0.0), -1.0), std::invalid_argument);
}

TEST_CASE("one step special cases") {
  EtdWorkspace<Vec> ws;
  {
    const Vec symbol = scalar(cd(0, 1234.5));
    const auto c = make_etd_coefficients(symbol, 0.01);
    Vec u = scalar(cd(0.3, -0.2));
    const Vec u0 = u;
    etdrk4_step(u, c, [](const Vec& in, Vec& out) { out = Vec::Zero(in.size()); }, ws);
    CHECK(u(0) == (c.e * u0)(0));
  }
  {
    const auto c = make_etd_coefficients(scalar(0.0), 0.125);
    Vec u = scalar(2.0);
    etdrk4_step(u, c, [](const Vec& in, Vec& out) { out = Vec::Ones(in.size()); }, ws);
    CHECK(std::abs(u(0) - 2.125) <= 1e-15);
  }
}

TEST_CASE("local error is fifth order and global error fourth order") {
  const cd u0(0.3, 0.1);
  const double h = 0.1;
  const double e1 = std::abs(etd_solve(u0, h, 1) - rk4_reference(u0, h, 20000));
  const double e2 = std::abs(etd_solve(u0, h / 2, 1) - rk4_reference(u0, h / 2, 20000));
  CHECK(e1 / e2 > 24);
  CHECK(e1 / e2 < 40);

  const double t = 1.0;
  const cd ref = rk4_reference(u0, t, 100000);
  const double g1 = std::abs(etd_solve(u0, t, 10) - ref);
  const double g2 = std::abs(etd_solve(u0, t, 20) - ref);
  const double g3 = std::abs(etd_solve(u0, t, 40) - ref);
  CHECK(std::log2(g1 / g2) == doctest::Approx(4).epsilon(0.1));
  CHECK(std::log2(g2 / g3) == doctest::Approx(4).epsilon(0.1));
}

TEST_CASE("observation schedule") {
  EvolveSpec spec{2.0, 10000, {0.0, 0.5, 1.0, 2.0, 0.5}};
  const auto steps = spec.observe_steps();
  CHECK(steps == std::vector<long>{0, 2500, 5000, 10000});
  spec.observe_times = {0.00003};
  CHECK_THROWS_AS(spec.observe_steps(), std::invalid_argument);
  spec.observe_times = {2.5};
  CHECK_THROWS_AS(spec.observe_steps(), std::invalid_argument);
}

TEST_CASE("evolve calls observers and detects blow-up") {
  Vec u = scalar(1.0);
  std::vector<double> seen;
  evolve(u, scalar(0.0), EvolveSpec{1.0, 8, {0.0, 0.5, 1.0}},
         [](const Vec& in, Vec& out) { out = -in; },
         [&](long, double t, const Vec&) { seen.push_back(t); });
  CHECK(seen == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(std::abs(u(0) - std::exp(-1.0)) < 1e-6);

  Vec v = scalar(1.0);
  try {
    evolve(v, scalar(0.0), EvolveSpec{1.0, 4, {}},
           [](const Vec& in, Vec& out) { out = in * in * 1e300 * 1e300; },
           [](long, double, const Vec&) {});
    FAIL("expected NonFiniteError");
  } catch (const NonFiniteError& e) {
    CHECK(e.time() == 0.25);
  }

  Vec w = scalar(1.0);
  CHECK_THROWS_AS(evolve(w, scalar(0.0), EvolveSpec{1.0, 0, {}},
                         [](const Vec& in, Vec& out) { out = in; },
                         [](long, double, const Vec&) {}),
                  std::invalid_argument);
}

TEST_CASE("KP evolution keeps the x-mean column and Hermitian symmetry") {
  const Grid g = make_grid(128, 32, 1, 0.5, 4, 2);
  FourierTransform2d t(g);
  const InitialData init =
      assemble_initial_data(g, CnoidalParams<double>(1, 0.5), GaussianPerturbation{0.5});
  for (auto eq : {Equation::kp1, Equation::kp2}) {
    KPNonlinearity n(g);
    SpectralField u = t.forward(init.field);
    const Eigen::ArrayXcd mean0 = x_mean_profile(u);
    double worst_herm = 0;
    evolve(u, linear_symbol(g, {eq}), EvolveSpec{0.2, 200, {0.05, 0.1, 0.15, 0.2}}, n,
           [&](long, double, const SpectralField& s) {
             worst_herm = std::max(worst_herm, hermitian_defect(s));
           });
    CHECK((x_mean_profile(u) - mean0).abs().maxCoeff() <= 1e-13);
    CHECK(worst_herm <= 1e-12);
  }
}

TEST_CASE("evolution is deterministic") {
  const Grid g = make_grid(64, 16, 1, 0.5, 4, 2);
  FourierTransform2d t(g);
  const RealField f = assemble_initial_data(g, CnoidalParams<double>(1, 0.5), GaussianPerturbation{1}).field;
  auto run = [&] {
    KPNonlinearity n(g);
    SpectralField u = t.forward(f);
    evolve(u, linear_symbol(g, {Equation::kp1}), EvolveSpec{0.1, 50, {}}, n,
           [](long, double, const SpectralField&) {});
    return u;
  };
  const SpectralField a = run();
  const SpectralField b = run();
  CHECK((a == b).all());
}
