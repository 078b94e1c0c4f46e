#pragma once

#include <optional>

namespace yigbell::linkbudget {

/// Homodyne receiver budget. The noise figure is stored in dB; the
/// "noise factor 2.5" quoted for the receiver reproduces 71 pW at 10 GHz only
/// as 2.5 dB. `linear_noise_factor` overrides the dB value when set.
struct LinkBudget {
  double noise_figure_dB = 2.5;
  std::optional<double> linear_noise_factor;
  double ambient_T0 = 290.0;             // K
  double bandwidth_B = 10e9;             // Hz
  double loss_L = 2.0;                   // >= 1
  double entangled_power_Ps = 3.56e-12;  // W
  double nbar = 604.0;
  double signal_frequency = 10e9;        // Hz

  void validate() const;
  double noise_factor() const;

  /// Same budget with nbar set to the Bose-Einstein occupancy at signal_frequency.
  LinkBudget with_derived_nbar() const;
};

/// F k T0 B.
double noise_power(const LinkBudget& b);

/// (Ps/L) / (nbar Ps/L + F k T0 B).
double snr_arm(const LinkBudget& b);

/// snr_arm^2 (mixer-1 output).
double snr_mixer1(const LinkBudget& b);

/// snr_mixer1 sqrt(2 B t).
double snr_out(const LinkBudget& b, double t_int);

struct IntegrationTime {
  double general = 0.0;           // (target / snr_mixer1)^2 / (2B)
  double thermal_dominated = 0.0;  // target^2 nbar^4 / (2B)
};

IntegrationTime integration_time(const LinkBudget& b, double target_snr);

/// Ratio t(scaled)/t(base) in the thermal-dominated limit when both the
/// signal frequency and the bandwidth are multiplied by `factor`.
struct FrequencyScaling {
  double rayleigh_jeans_ratio = 0.0;  // nbar = kT/hf: exactly factor^-5
  double bose_einstein_ratio = 0.0;   // exact occupancy
};

FrequencyScaling thermal_time_scaling(double signal_frequency, double temperature, double factor);

}  // namespace yigbell::linkbudget
