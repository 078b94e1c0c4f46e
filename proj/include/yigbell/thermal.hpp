#pragma once

#include <cmath>
#include <string_view>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"

namespace yigbell::core {

/// A frequency/temperature pair; omega is kept consistent with f.
struct SpectralPoint {
  double frequency_f;              // Hz
  double angular_frequency_omega;  // rad/s
  double temperature_T;            // K

  static SpectralPoint make(double f, double T) {
    detail::require_positive(f, "frequency");
    detail::require_positive(T, "temperature");
    return {f, kTwoPi * f, T};
  }
};

enum class Regime { RayleighJeans, Quantum, Boundary };

std::string_view to_string(Regime r);

/// hf/kT.
template <typename Scalar>
Scalar photon_to_thermal_ratio(Scalar f, Scalar T) {
  using C = PhysicalConstants<Scalar>;
  detail::require_positive(static_cast<double>(f), "frequency");
  detail::require_positive(static_cast<double>(T), "temperature");
  return C::planck_h * f / (C::boltzmann_k * T);
}

/// Bose-Einstein occupancy 1/(exp(hf/kT) - 1). expm1 keeps full relative
/// precision deep in the Rayleigh-Jeans regime where hf/kT ~ 1e-12.
template <typename Scalar>
Scalar mean_thermal_photons(Scalar f, Scalar T) {
  const Scalar x = photon_to_thermal_ratio(f, T);
  return Scalar(1) / std::expm1(x);
}

/// Large-occupancy asymptote kT/hf.
template <typename Scalar>
Scalar rayleigh_jeans_occupancy(Scalar f, Scalar T) {
  return Scalar(1) / photon_to_thermal_ratio(f, T);
}

/// Frequency at which hf = kT.
template <typename Scalar>
Scalar crossover_frequency(Scalar T) {
  using C = PhysicalConstants<Scalar>;
  detail::require_positive(static_cast<double>(T), "temperature");
  return C::boltzmann_k * T / C::planck_h;
}

inline constexpr double kRegimeTolerance = 1e-9;

inline Regime classify_regime(double f, double T) {
  const double x = photon_to_thermal_ratio(f, T);
  if (x < 1.0 - kRegimeTolerance) return Regime::RayleighJeans;
  if (x > 1.0 + kRegimeTolerance) return Regime::Quantum;
  return Regime::Boundary;
}

/// Photons per second carried by power P at frequency f.
template <typename Scalar>
Scalar photon_rate_from_power(Scalar power, Scalar f) {
  using C = PhysicalConstants<Scalar>;
  detail::require_nonnegative(static_cast<double>(power), "power");
  detail::require_positive(static_cast<double>(f), "frequency");
  return power / (C::planck_h * f);
}

}  // namespace yigbell::core
