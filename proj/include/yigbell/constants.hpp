#pragma once

#include <numbers>

namespace yigbell {

/// SI constants (CODATA 2018). Every module reads from this table.
template <typename Scalar = double>
struct PhysicalConstants {
  static constexpr Scalar planck_h = Scalar(6.62607015e-34);                 // J s (exact)
  static constexpr Scalar reduced_planck_hbar =
      planck_h / (Scalar(2) * std::numbers::pi_v<Scalar>);                   // J s
  static constexpr Scalar boltzmann_k = Scalar(1.380649e-23);                // J/K (exact)
  static constexpr Scalar vacuum_permeability_mu0 = Scalar(1.25663706212e-6);  // T m/A
  static constexpr Scalar vacuum_permittivity_eps0 = Scalar(8.8541878128e-12); // F/m
  static constexpr Scalar light_speed_c = Scalar(299792458.0);               // m/s (exact)
  static constexpr Scalar electron_charge_e = Scalar(1.602176634e-19);       // C (exact)
  static constexpr Scalar electron_mass_me = Scalar(9.1093837015e-31);       // kg
  static constexpr Scalar lande_g_factor_ge = Scalar(2.00231930436256);
};

using Constants = PhysicalConstants<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Free-space wave impedance sqrt(mu0/eps0), ohms.
double free_space_impedance();

}  // namespace yigbell
