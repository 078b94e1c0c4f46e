#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"

namespace yigbell::spdc {

enum class Polarization { O, E, H, V, RHC, LHC };
enum class Interaction { TypeI, TypeII };

/// Pump, signal and idler of one down-conversion event.
struct ThreeWaveState {
  double omega_p = 0.0, omega_s = 0.0, omega_i = 0.0;  // rad/s
  Eigen::Vector3d k_p = Eigen::Vector3d::Zero();       // rad/m
  Eigen::Vector3d k_s = Eigen::Vector3d::Zero();
  Eigen::Vector3d k_i = Eigen::Vector3d::Zero();
  double n_p = 1.0, n_s = 1.0, n_i = 1.0;
  Polarization pol_p = Polarization::E, pol_s = Polarization::O, pol_i = Polarization::O;
  double phase_p = 0.0, phase_s = 0.0, phase_i = 0.0;  // rad
  Interaction interaction = Interaction::TypeI;

  /// |omega_p - omega_s - omega_i|.
  double energy_residual() const { return std::abs(omega_p - omega_s - omega_i); }

  /// Builds a closed state: omega_i from energy conservation, |k| = omega n / c
  /// along each (normalised) direction, and phase_i = phase_p - phase_s.
  static ThreeWaveState create(double omega_p, double omega_s, double n_p, double n_s,
                               double n_i, const Eigen::Vector3d& dir_p,
                               const Eigen::Vector3d& dir_s, const Eigen::Vector3d& dir_i,
                               double phase_p, double phase_s,
                               Interaction interaction = Interaction::TypeI);
};

/// Pump-side parameters that set the parametric field gain.
struct GainContext {
  double pump_intensity_Ip = 0.0;            // W/m^2 at the crystal face
  std::optional<double> chi2_electric;       // m/V
  std::optional<double> chi2_magnetic;       // m/A
  double n_p = 1.0, n_s = 1.0, n_i = 1.0;
  double pump_impedance_Zp = 0.0;            // ohm
  double interaction_length_l = 0.0;         // m
  double intensity_enhancement = 1.0;        // optional cavity factor on Ip

  void validate() const;
  double effective_intensity() const { return pump_intensity_Ip * intensity_enhancement; }
};

struct SpectralRadiance {
  double value = 0.0;     // W/m^2/sr/(rad/s)
  double at_omega = 0.0;  // rad/s
};

struct Mismatch {
  Eigen::Vector3d vector = Eigen::Vector3d::Zero();  // k_p - k_s - k_i
  double magnitude = 0.0;
  double collinear_scalar = 0.0;  // (w_p n_p - w_s n_s - w_i n_i)/c
};

double solve_idler(double omega_p, double omega_s);

Mismatch k_mismatch(const ThreeWaveState& state);

/// (phase_s + phase_i - phase_p) wrapped into (-pi, pi].
double phase_sum_residual(double phase_p, double phase_s, double phase_i);

/// Radiance of the vacuum fluctuations, hbar w^3 n^2 / (8 pi^3 c^2).
template <typename Scalar>
Scalar vacuum_radiance_value(Scalar omega, Scalar n_s) {
  using C = PhysicalConstants<Scalar>;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return C::reduced_planck_hbar * omega * omega * omega * n_s * n_s /
         (Scalar(8) * pi * pi * pi * C::light_speed_c * C::light_speed_c);
}

SpectralRadiance vacuum_radiance(double omega, double n_s);

/// sqrt(8 w_s w_i Ip mu0 / (c n_p)), the prefactor shared by both gain formulas.
double gain_prefactor(const GainContext& ctx, double omega_s, double omega_i);

/// gamma_E = prefactor * pi * chi2_E.
double field_gain_dielectric(const GainContext& ctx, double omega_s, double omega_i);

/// gamma_M = prefactor * pi * chi2_M / Z_p.
double field_gain_magnetic(const GainContext& ctx, double omega_s, double omega_i);

/// Pump impedance sqrt(mu_r mu0 / (eps_r eps0)).
double medium_impedance(double mu_r, double eps_r);

/// Parametric radiance for gain gamma and mismatch |dk| over length l:
///   I_vac sinh^2(sqrt(g^2 - dk^2/4) l) / (1 - dk^2/(4 g^2)),
/// continued through sinh -> sin when dk/2 > g and through (g l)^2 at the crossover.
SpectralRadiance radiance_general(const SpectralRadiance& vacuum, double gamma, double delta_k_mag,
                                  double l);

/// Low-gain form I_vac g^2 l^2 sinc^2(dk l / 2).
SpectralRadiance radiance_low_gain(const SpectralRadiance& vacuum, double gamma, double delta_k_mag,
                                   double l);

struct MatchedRadiance {
  SpectralRadiance radiance;
  double gain_length = 0.0;  // gamma_E l
  bool low_gain_valid = true;  // gamma_E l < 0.1
};

/// Phase-matched low-gain dielectric radiance
///   hbar mu0 w_s^4 w_i Ip n_s^2 chi2^2 l^2 / (pi c^3 n_p).
MatchedRadiance radiance_matched_dielectric(const GainContext& ctx, double omega_s, double omega_i);

/// radiance * (2 pi bandwidth) * solid angle * area, W.
double band_power(double radiance, double bandwidth_hz, double solid_angle_sr, double area_m2);

}  // namespace yigbell::spdc
