#include "kpwave/etd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kpwave {

std::array<std::complex<double>, 3> phi_functions_direct(std::complex<double> z) {
  if (z == 0.0) {
    return {1.0, 0.5, 1.0 / 6.0};
  }
  const std::complex<double> ez = std::exp(z);
  const std::complex<double> p1 = (ez - 1.0) / z;
  const std::complex<double> p2 = (ez - 1.0 - z) / (z * z);
  const std::complex<double> p3 = (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
  return {p1, p2, p3};
}

std::array<std::complex<double>, 3> phi_functions_contour(std::complex<double> z, int points,
                                                          double radius) {
  std::array<std::complex<double>, 3> sum{};
  for (int m = 0; m < points; ++m) {
    const double theta = 2 * std::numbers::pi * (m + 0.5) / points;
    const auto at = phi_functions_direct(z + std::polar(radius, theta));
    for (int k = 0; k < 3; ++k) {
      sum[k] += at[k];
    }
  }
  for (auto& s : sum) {
    s /= static_cast<double>(points);
  }
  return sum;
}

std::array<std::complex<double>, 3> phi_functions(std::complex<double> z) {
  if (z == 0.0) {
    return {1.0, 0.5, 1.0 / 6.0};
  }
  if (std::abs(z) < 0.5) {
    return phi_functions_contour(z);
  }
  return phi_functions_direct(z);
}

std::vector<long> EvolveSpec::observe_steps() const {
  const double h = step();
  std::vector<long> steps;
  steps.reserve(observe_times.size());
  for (double t : observe_times) {
    if (t < -1e-12 * t_end || t > t_end * (1 + 1e-12)) {
      throw std::invalid_argument("observation time " + std::to_string(t) +
                                  " lies outside [0, t_end]");
    }
    const double ratio = t / h;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-12 * std::max(1.0, std::abs(ratio))) {
      throw std::invalid_argument("observation time " + std::to_string(t) +
                                  " is not a multiple of the step " + std::to_string(h));
    }
    steps.push_back(static_cast<long>(n));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

}  // namespace kpwave
