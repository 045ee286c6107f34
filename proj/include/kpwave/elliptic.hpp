#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kpwave {

/// Elliptic modulus k (not the parameter m = k^2). Valid range is [0, 1).
template <typename Scalar = double>
class EllipticModulus {
 public:
  explicit EllipticModulus(Scalar k) : k_(k) {
    if (!(k >= Scalar(0) && k < Scalar(1))) {
      throw std::domain_error("elliptic modulus must lie in [0, 1), got " +
                              std::to_string(static_cast<double>(k)));
    }
  }

  Scalar value() const { return k_; }
  Scalar complementary() const { return std::sqrt((Scalar(1) - k_) * (Scalar(1) + k_)); }

 private:
  Scalar k_;
};

namespace detail {

// Working precision for the AGM chain and the period reduction. Reducing x
// modulo 4K in plain double loses ~|x|*eps, so doubles are carried in the
// x87 extended format where available.
template <typename Scalar>
struct WidePrecision {
  using type = Scalar;
};
template <>
struct WidePrecision<double> {
  using type = long double;
};

inline constexpr int kMaxAgmIterations = 40;

template <typename W>
struct AgmChain {
  std::array<W, kMaxAgmIterations + 1> a{};
  std::array<W, kMaxAgmIterations + 1> c{};
  int steps = 0;
};

// Descending AGM sequence starting from (1, k'), c_0 = k.
template <typename W>
AgmChain<W> agm_chain(W k) {
  AgmChain<W> chain;
  W a = 1;
  W b = std::sqrt((W(1) - k) * (W(1) + k));
  chain.a[0] = a;
  chain.c[0] = k;
  const W eps = std::numeric_limits<W>::epsilon();
  int n = 0;
  while (std::abs(a - b) > 4 * eps * a && n < kMaxAgmIterations) {
    const W a_next = (a + b) / 2;
    const W c_next = (a - b) / 2;
    b = std::sqrt(a * b);
    a = a_next;
    ++n;
    chain.a[n] = a;
    chain.c[n] = c_next;
  }
  chain.steps = n;
  return chain;
}

template <typename W>
W quarter_period(const AgmChain<W>& chain) {
  return std::numbers::pi_v<W> / (2 * chain.a[chain.steps]);
}

}  // namespace detail

/// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).
template <typename Scalar>
Scalar complete_elliptic_k(EllipticModulus<Scalar> k) {
  using W = typename detail::WidePrecision<Scalar>::type;
  const auto chain = detail::agm_chain<W>(static_cast<W>(k.value()));
  return static_cast<Scalar>(detail::quarter_period(chain));
}

inline double complete_elliptic_k(double k) {
  return complete_elliptic_k(EllipticModulus<double>(k));
}

template <typename Scalar>
struct JacobiValues {
  Scalar sn;
  Scalar cn;
  Scalar dn;
};

/// sn, cn and dn of a real argument by descending Landen transformation.
///
/// The argument is first folded into [0, K] using the real period 4K and the
/// quarter-period symmetries, so accuracy does not degrade with |x| beyond
/// the rounding of x itself. The AGM chain is built once per modulus, which
/// matters when sampling whole grids.
template <typename Scalar>
class JacobiElliptic {
  using W = typename detail::WidePrecision<Scalar>::type;

 public:
  explicit JacobiElliptic(EllipticModulus<Scalar> k)
      : modulus_(k), chain_(detail::agm_chain<W>(static_cast<W>(k.value()))),
        quarter_(detail::quarter_period(chain_)) {}

  EllipticModulus<Scalar> modulus() const { return modulus_; }
  Scalar quarter_period() const { return static_cast<Scalar>(quarter_); }

  JacobiValues<Scalar> operator()(Scalar x) const {
    if (!std::isfinite(x)) {
      throw std::domain_error("jacobi elliptic: non-finite argument");
    }
    W u = std::abs(static_cast<W>(x));
    W sn_sign = x < 0 ? -1 : 1;
    W cn_sign = 1;
    u = std::fmod(u, 4 * quarter_);
    if (u > 2 * quarter_) {
      u = 4 * quarter_ - u;
      sn_sign = -sn_sign;
    }
    if (u > quarter_) {
      u = 2 * quarter_ - u;
      cn_sign = -cn_sign;
    }

    const int n = chain_.steps;
    W phi = std::ldexp(chain_.a[n] * u, n);
    W phi_prev = phi;
    for (int i = n; i > 0; --i) {
      phi_prev = phi;
      phi = (phi + std::asin(chain_.c[i] / chain_.a[i] * std::sin(phi))) / 2;
    }
    const W s = std::sin(phi);
    const W c = std::cos(phi);
    const W d = n == 0 ? W(1) : c / std::cos(phi_prev - phi);
    return {static_cast<Scalar>(sn_sign * s), static_cast<Scalar>(cn_sign * c),
            static_cast<Scalar>(d)};
  }

  Scalar cn(Scalar x) const { return (*this)(x).cn; }

 private:
  EllipticModulus<Scalar> modulus_;
  detail::AgmChain<W> chain_;
  W quarter_;
};

template <typename Scalar>
JacobiValues<Scalar> jacobi_sncndn(Scalar x, EllipticModulus<Scalar> k) {
  return JacobiElliptic<Scalar>(k)(x);
}

template <typename Scalar>
Scalar jacobi_cn(Scalar x, EllipticModulus<Scalar> k) {
  return jacobi_sncndn(x, k).cn;
}

inline double jacobi_cn(double x, double k) {
  return jacobi_cn(x, EllipticModulus<double>(k));
}

}  // namespace kpwave
