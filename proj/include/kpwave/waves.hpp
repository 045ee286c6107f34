#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>

#include "kpwave/elliptic.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

/// Parameters of the KdV cnoidal wave
///   u = u0 + 12 kappa^2 k^2 cn^2(kappa (x - x0 - (V + u0) t); k),
///   V = 4 kappa^2 (2 k^2 - 1).
template <typename Scalar = double>
struct CnoidalParams {
  Scalar kappa;
  EllipticModulus<Scalar> k;
  Scalar u0 = 0;
  Scalar x0 = 0;

  CnoidalParams(Scalar kappa_, Scalar k_, Scalar u0_ = 0, Scalar x0_ = 0)
      : kappa(kappa_), k(k_), u0(u0_), x0(x0_) {
    if (!(kappa > 0) || !std::isfinite(kappa)) {
      throw std::invalid_argument("cnoidal kappa must be positive and finite");
    }
    if (!std::isfinite(u0) || !std::isfinite(x0)) {
      throw std::invalid_argument("cnoidal offset and phase must be finite");
    }
  }

  Scalar speed() const {
    const Scalar m = k.value() * k.value();
    return 4 * kappa * kappa * (2 * m - 1);
  }
  /// Spatial period 2 K(k) / kappa.
  Scalar wavelength() const { return 2 * complete_elliptic_k(k) / kappa; }
  /// Crest height above the background u0.
  Scalar amplitude() const { return 12 * kappa * kappa * k.value() * k.value(); }
};

namespace detail {

// x0 + (V + u0) t folded into one wavelength, so the cn argument stays small.
template <typename Scalar>
Scalar reduced_shift(const CnoidalParams<Scalar>& p, Scalar t) {
  const Scalar lambda = p.wavelength();
  return std::fmod(p.x0 + (p.speed() + p.u0) * t, lambda);
}

}  // namespace detail

template <typename Scalar>
Scalar cnoidal_value(Scalar x, Scalar t, const CnoidalParams<Scalar>& p) {
  const Scalar c = jacobi_cn(p.kappa * (x - detail::reduced_shift(p, t)), p.k);
  return p.u0 + p.amplitude() * c * c;
}

/// k -> 1 limit: u0 + 12 kappa^2 sech^2(kappa (x - x0 - (4 kappa^2 + u0) t)).
/// Only kappa, u0 and x0 of `p` are used.
template <typename Scalar>
Scalar soliton_value(Scalar x, Scalar t, const CnoidalParams<Scalar>& p) {
  const Scalar s = Scalar(1) / std::cosh(p.kappa * (x - p.x0 - (4 * p.kappa * p.kappa + p.u0) * t));
  return p.u0 + 12 * p.kappa * p.kappa * s * s;
}

/// scale * x exp(-(x^2 + y^2)), the x-derivative of a Gaussian up to sign.
struct GaussianPerturbation {
  double scale = 1;
};

template <typename Scalar>
Scalar gaussian_perturbation_value(Scalar x, Scalar y, GaussianPerturbation g) {
  return static_cast<Scalar>(g.scale) * x * std::exp(-(x * x + y * y));
}

/// Transverse phase modulation x -> x + delta cos(4 y / Ly).
struct DeformationParams {
  double delta = 0;
  double ly = 2;
};

struct NoPerturbation {};

using Perturbation = std::variant<NoPerturbation, GaussianPerturbation, DeformationParams>;

/// Raised when initial data would feed the singular xi_x = 0, xi_y != 0 modes.
class ConstraintViolation : public std::runtime_error {
 public:
  explicit ConstraintViolation(double defect)
      : std::runtime_error(message(defect)),
        defect_(defect) {}
  double defect() const { return defect_; }

 private:
  static std::string message(double defect) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "initial data violate the x-mean constraint (relative defect %.3e)", defect);
    return buf;
  }
  double defect_;
};

/// Cnoidal wave at time t sampled on every node (y-independent).
RealField cnoidal_field(const Grid& grid, const CnoidalParams<double>& p, double t = 0);

/// Deformed cnoidal data, translated with the cnoidal speed to time t. Requires
/// u0 = x0 = 0.
RealField deformed_cnoidal_field(const Grid& grid, const CnoidalParams<double>& p,
                                 const DeformationParams& d, double t = 0);

RealField gaussian_perturbation_field(const Grid& grid, GaussianPerturbation g);

inline constexpr double kConstraintTolerance = 1e-10;

struct InitialData {
  RealField field;
  Eigen::ArrayXcd x_mean;  // u_hat(0, xi_y) per transverse mode
  double constraint_defect = 0;
};

/// Cnoidal wave plus the chosen perturbation. Throws ConstraintViolation if
/// the x-mean varies with y beyond kConstraintTolerance (relative).
InitialData assemble_initial_data(const Grid& grid, const CnoidalParams<double>& p,
                                  const Perturbation& perturbation);

/// Exact unperturbed evolution of the data that `perturbation` deforms: the
/// translated cnoidal wave, or the translated deformed wave for deformations.
RealField traveling_reference(const Grid& grid, const CnoidalParams<double>& p,
                              const Perturbation& perturbation, double t);

}  // namespace kpwave
