#include "yigbell/linkbudget.hpp"

#include <cmath>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/thermal.hpp"

namespace yigbell::linkbudget {

void LinkBudget::validate() const {
  if (!(loss_L >= 1.0)) throw DomainError("loss must be >= 1");
  detail::require_positive(ambient_T0, "ambient temperature");
  detail::require_nonnegative(bandwidth_B, "bandwidth");
  detail::require_nonnegative(entangled_power_Ps, "entangled power");
  detail::require_nonnegative(nbar, "nbar");
  if (linear_noise_factor) detail::require_nonnegative(*linear_noise_factor, "noise factor");
}

double LinkBudget::noise_factor() const {
  if (linear_noise_factor) return *linear_noise_factor;
  return std::pow(10.0, noise_figure_dB / 10.0);
}

LinkBudget LinkBudget::with_derived_nbar() const {
  LinkBudget out = *this;
  out.nbar = core::mean_thermal_photons(signal_frequency, ambient_T0);
  return out;
}

double noise_power(const LinkBudget& b) {
  b.validate();
  return b.noise_factor() * Constants::boltzmann_k * b.ambient_T0 * b.bandwidth_B;
}

double snr_arm(const LinkBudget& b) {
  const double received = b.entangled_power_Ps / b.loss_L;
  const double denom = b.nbar * received + noise_power(b);
  if (!(denom > 0.0)) throw DomainError("SNR undefined: both noise terms are zero");
  return received / denom;
}

double snr_mixer1(const LinkBudget& b) {
  const double s = snr_arm(b);
  return s * s;
}

double snr_out(const LinkBudget& b, double t_int) {
  detail::require_nonnegative(t_int, "integration time");
  return snr_mixer1(b) * std::sqrt(2.0 * b.bandwidth_B * t_int);
}

IntegrationTime integration_time(const LinkBudget& b, double target_snr) {
  detail::require_positive(target_snr, "target SNR");
  detail::require_positive(b.bandwidth_B, "bandwidth");
  const double s2 = snr_mixer1(b);
  if (!(s2 > 0.0)) throw NumericalError("integration time unbounded: mixer SNR is zero");
  IntegrationTime t;
  const double ratio = target_snr / s2;
  t.general = ratio * ratio / (2.0 * b.bandwidth_B);
  const double n2 = b.nbar * b.nbar;
  t.thermal_dominated = target_snr * target_snr * n2 * n2 / (2.0 * b.bandwidth_B);
  return t;
}

FrequencyScaling thermal_time_scaling(double signal_frequency, double temperature, double factor) {
  detail::require_positive(factor, "scaling factor");
  // t ~ nbar^4 / B with B scaled by the same factor.
  auto ratio = [&](double n_base, double n_scaled) {
    const double q = n_scaled / n_base;
    return q * q * q * q / factor;
  };
  FrequencyScaling s;
  s.rayleigh_jeans_ratio =
      ratio(core::rayleigh_jeans_occupancy(signal_frequency, temperature),
            core::rayleigh_jeans_occupancy(signal_frequency * factor, temperature));
  s.bose_einstein_ratio =
      ratio(core::mean_thermal_photons(signal_frequency, temperature),
            core::mean_thermal_photons(signal_frequency * factor, temperature));
  return s;
}

}  // namespace yigbell::linkbudget
