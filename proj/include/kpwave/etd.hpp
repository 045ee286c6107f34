#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpwave {

/// phi_1, phi_2, phi_3 at z, where phi_k(z) = (e^z - sum_{j<k} z^j / j!) / z^k.
///
/// Near the origin (|z| < 0.5) the closed forms cancel catastrophically, so
/// they are replaced by the mean over 64 points on the unit circle around z.
std::array<std::complex<double>, 3> phi_functions(std::complex<double> z);

/// Closed-form phi_1..phi_3; accurate only away from z = 0.
std::array<std::complex<double>, 3> phi_functions_direct(std::complex<double> z);

/// Contour-mean phi_1..phi_3 with `points` nodes on a circle of `radius`.
std::array<std::complex<double>, 3> phi_functions_contour(std::complex<double> z,
                                                          int points = 64, double radius = 1);

/// Cox-Matthews ETDRK4 coefficient fields for a diagonal symbol and step h.
template <typename ArrayType>
struct EtdCoefficients {
  double h = 0;
  ArrayType e;   // exp(hL)
  ArrayType e2;  // exp(hL/2)
  ArrayType q;   // (h/2) phi_1(hL/2)
  ArrayType f1;  // h (phi_1 - 3 phi_2 + 4 phi_3)(hL)
  ArrayType f2;  // h (phi_2 - 2 phi_3)(hL)
  ArrayType f3;  // h (4 phi_3 - phi_2)(hL)
};

template <typename ArrayType>
EtdCoefficients<ArrayType> make_etd_coefficients(const ArrayType& symbol, double h) {
  if (!(h > 0) || !std::isfinite(h)) {
    throw std::invalid_argument("ETD step size must be positive and finite");
  }
  EtdCoefficients<ArrayType> c;
  c.h = h;
  c.e.resizeLike(symbol);
  c.e2.resizeLike(symbol);
  c.q.resizeLike(symbol);
  c.f1.resizeLike(symbol);
  c.f2.resizeLike(symbol);
  c.f3.resizeLike(symbol);
  for (Eigen::Index i = 0; i < symbol.size(); ++i) {
    const std::complex<double> z = h * symbol(i);
    const auto full = phi_functions(z);
    const auto half = phi_functions(z / 2.0);
    c.e(i) = std::exp(z);
    c.e2(i) = std::exp(z / 2.0);
    c.q(i) = (h / 2) * half[0];
    c.f1(i) = h * (full[0] - 3.0 * full[1] + 4.0 * full[2]);
    c.f2(i) = h * (full[1] - 2.0 * full[2]);
    c.f3(i) = h * (4.0 * full[2] - full[1]);
  }
  return c;
}

/// Stage storage reused across steps.
template <typename ArrayType>
struct EtdWorkspace {
  ArrayType nu, na, nb, nc, a, b, c;
};

/// One ETDRK4 step in place. `nonlinear(in, out)` evaluates N.
template <typename ArrayType, typename Nonlinear>
void etdrk4_step(ArrayType& u, const EtdCoefficients<ArrayType>& coeffs, Nonlinear&& nonlinear,
                 EtdWorkspace<ArrayType>& ws) {
  nonlinear(u, ws.nu);
  ws.a = coeffs.e2 * u + coeffs.q * ws.nu;
  nonlinear(ws.a, ws.na);
  ws.b = coeffs.e2 * u + coeffs.q * ws.na;
  nonlinear(ws.b, ws.nb);
  ws.c = coeffs.e2 * ws.a + coeffs.q * (2.0 * ws.nb - ws.nu);
  nonlinear(ws.c, ws.nc);
  u = coeffs.e * u + coeffs.f1 * ws.nu + 2.0 * coeffs.f2 * (ws.na + ws.nb) + coeffs.f3 * ws.nc;
}

/// Time span, step count and the steps at which observers fire.
struct EvolveSpec {
  double t_end = 0;
  long nt = 0;
  std::vector<double> observe_times;  // sorted, within [0, t_end], multiples of h

  double step() const { return t_end / static_cast<double>(nt); }
  /// Step indices of observe_times; throws if a time is not a multiple of h
  /// to within 1e-12 relative.
  std::vector<long> observe_steps() const;
};

/// Evolution hit a NaN/Inf coefficient.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(double t)
      : std::runtime_error("solution became non-finite at t = " + std::to_string(t)), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

/// Advance `u` over spec.nt uniform steps, calling observer(step, t, u) at
/// every requested step (including step 0 if requested). Throws
/// NonFiniteError on the first step producing a non-finite coefficient.
template <typename ArrayType, typename Nonlinear, typename Observer>
void evolve(ArrayType& u, const ArrayType& symbol, const EvolveSpec& spec, Nonlinear&& nonlinear,
            Observer&& observer) {
  if (spec.nt < 1 || !(spec.t_end > 0)) {
    throw std::invalid_argument("evolve needs nt >= 1 and t_end > 0");
  }
  const double h = spec.step();
  const auto coeffs = make_etd_coefficients(symbol, h);
  const std::vector<long> steps = spec.observe_steps();
  EtdWorkspace<ArrayType> ws;
  auto next = steps.begin();
  if (next != steps.end() && *next == 0) {
    observer(0L, 0.0, static_cast<const ArrayType&>(u));
    ++next;
  }
  for (long n = 1; n <= spec.nt; ++n) {
    etdrk4_step(u, coeffs, nonlinear, ws);
    if (!u.allFinite()) {
      throw NonFiniteError(n * h);
    }
    while (next != steps.end() && *next == n) {
      observer(n, n * h, static_cast<const ArrayType&>(u));
      ++next;
    }
  }
}

}  // namespace kpwave
