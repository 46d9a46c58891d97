#pragma once

// Fourier symbols of the lattice Poisson / conjugate-Poisson extensions.
//
// Angles live on the torus (-pi, pi]. Every symbol here depends on the
// frequency only through the half-angle sum
//     sigma(theta) = sum_j sin^2(theta_j / 2),
// and the vertical decay factor rho is the root in (0, 1] of
//     rho + 1/rho = 2 (1 + 2 sigma)    (= 4 - 2 cos theta for s = 1).
// The sign convention is sgn(0) = 0 throughout, so every multiplier vanishes
// at the origin; the one-sided limits of the 1-d multipliers there are -/+ i.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>

#include "dhilbert/errors.hpp"

namespace dhilbert::spectral {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

inline double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

/// Maps an arbitrary angle onto (-pi, pi].
inline double wrap_to_torus(double theta) {
  double t = std::remainder(theta, 2.0 * pi);
  if (t <= -pi) t += 2.0 * pi;
  return t;
}

inline double half_angle_sin2(double theta) {
  const double s = std::sin(0.5 * std::abs(theta));
  return s * s;
}

inline double half_angle_sum(std::span<const double> thetas) {
  double sigma = 0.0;
  for (double t : thetas) sigma += half_angle_sin2(t);
  return sigma;
}

/// rho = alpha - sqrt(alpha^2 - 1) with alpha = 1 + 2 sigma, evaluated as
/// 1 / (alpha + sqrt(alpha^2 - 1)) so nothing cancels as sigma -> 0.
inline double rho_from_sigma(double sigma) {
  return 1.0 / (1.0 + 2.0 * sigma + 2.0 * std::sqrt(sigma * (1.0 + sigma)));
}

/// rho^{1/2} = sqrt(1 + sigma) - sqrt(sigma).
inline double rho_sqrt_from_sigma(double sigma) {
  return 1.0 / (std::sqrt(1.0 + sigma) + std::sqrt(sigma));
}

inline double rho(double theta) { return rho_from_sigma(half_angle_sin2(theta)); }

/// sqrt(1 + sin^2(theta/2)) - sin(theta/2) on [0, pi], extended evenly.
inline double rho_sqrt(double theta) {
  const double s = std::sin(0.5 * std::abs(theta));
  return 1.0 / (std::sqrt(1.0 + s * s) + s);
}

/// f(theta) = rho(theta)^{1/2} - 1, written without the cancellation near 0.
inline double f(double theta) {
  const double s = std::sin(0.5 * std::abs(theta));
  const double q = std::sqrt(1.0 + s * s);
  return s * s / (q + 1.0) - s;
}

/// Symbol of the lattice Hilbert transform: (-i sgn theta) rho^{1/2} e^{i theta / 2}.
inline complex multiplier_hd(double theta) {
  return complex(0.0, -sgn(theta)) * rho_sqrt(theta) * std::polar(1.0, 0.5 * theta);
}

/// Symbol of the Riesz-Titchmarsh transform H+: (-i sgn theta) e^{i theta / 2}.
inline complex multiplier_hplus(double theta) {
  return complex(0.0, -sgn(theta)) * std::polar(1.0, 0.5 * theta);
}

namespace detail {

inline void check_axis(std::span<const double> thetas, int j) {
  if (thetas.empty()) throw InvalidArgument("frequency vector must have at least one coordinate");
  if (j < 1 || j > static_cast<int>(thetas.size()))
    throw InvalidArgument("axis index j=" + std::to_string(j) + " outside [1, " + std::to_string(thetas.size()) + "]");
}

}  // namespace detail

inline double rho_s(std::span<const double> thetas) { return rho_from_sigma(half_angle_sum(thetas)); }

inline double rho_sqrt_s(std::span<const double> thetas) { return rho_sqrt_from_sigma(half_angle_sum(thetas)); }

/// omega_j = sgn(theta_j) sin(theta_j / 2) / sqrt(sigma), zero at the origin.
/// Scaled by the largest |sin| so that tiny nonzero frequencies keep their direction.
inline double omega(std::span<const double> thetas, int j) {
  detail::check_axis(thetas, j);
  double largest = 0.0;
  for (double t : thetas) largest = std::max(largest, std::abs(std::sin(0.5 * t)));
  if (largest == 0.0) return 0.0;
  double norm2 = 0.0;
  for (double t : thetas) {
    const double q = std::sin(0.5 * t) / largest;
    norm2 += q * q;
  }
  const double tj = thetas[static_cast<std::size_t>(j - 1)];
  return sgn(tj) * (std::sin(0.5 * tj) / largest) / std::sqrt(norm2);
}

/// Boundary multiplier m_j = (-i sgn theta_j) omega_j rho^{1/2} e^{i theta_j / 2}.
inline complex multiplier_tj(std::span<const double> thetas, int j) {
  detail::check_axis(thetas, j);
  const double tj = thetas[static_cast<std::size_t>(j - 1)];
  return complex(0.0, -sgn(tj)) * omega(thetas, j) * rho_sqrt_s(thetas) * std::polar(1.0, 0.5 * tj);
}

/// Riesz multiplier m_{R_j} = (-i sgn theta_j) omega_j e^{i theta_j / 2}.
inline complex multiplier_rj(std::span<const double> thetas, int j) {
  detail::check_axis(thetas, j);
  const double tj = thetas[static_cast<std::size_t>(j - 1)];
  return complex(0.0, -sgn(tj)) * omega(thetas, j) * std::polar(1.0, 0.5 * tj);
}

}  // namespace dhilbert::spectral
