#include "yigbell/spdc.hpp"

#include <cmath>

namespace yigbell::spdc {
namespace {

// sinh^2(sqrt(x) l)/x, continued to sin^2(sqrt(-x) l)/(-x) for x < 0 and to l^2 at x = 0.
double gain_shape(double x, double l) {
  const double y2 = x * l * l;
  if (std::abs(y2) < 1e-4) {
    return l * l * (1.0 + y2 * (1.0 / 3.0 + y2 * (2.0 / 45.0 + y2 / 315.0)));
  }
  if (x > 0.0) {
    const double s = std::sinh(std::sqrt(x) * l);
    return s * s / x;
  }
  const double s = std::sin(std::sqrt(-x) * l);
  return s * s / (-x);
}

}  // namespace

ThreeWaveState ThreeWaveState::create(double omega_p, double omega_s, double n_p, double n_s,
                                      double n_i, const Eigen::Vector3d& dir_p,
                                      const Eigen::Vector3d& dir_s, const Eigen::Vector3d& dir_i,
                                      double phase_p, double phase_s, Interaction interaction) {
  const double c = Constants::light_speed_c;
  ThreeWaveState st;
  st.omega_p = omega_p;
  st.omega_s = omega_s;
  st.omega_i = solve_idler(omega_p, omega_s);
  st.n_p = n_p;
  st.n_s = n_s;
  st.n_i = n_i;
  st.k_p = dir_p.normalized() * (omega_p * n_p / c);
  st.k_s = dir_s.normalized() * (omega_s * n_s / c);
  st.k_i = dir_i.normalized() * (st.omega_i * n_i / c);
  st.phase_p = phase_p;
  st.phase_s = phase_s;
  st.phase_i = phase_p - phase_s;
  st.interaction = interaction;
  if (interaction == Interaction::TypeI) {
    st.pol_p = Polarization::E;
    st.pol_s = Polarization::O;
    st.pol_i = Polarization::O;
  } else {
    st.pol_p = Polarization::E;
    st.pol_s = Polarization::O;
    st.pol_i = Polarization::E;
  }
  return st;
}

void GainContext::validate() const {
  detail::require_nonnegative(pump_intensity_Ip, "pump intensity");
  detail::require_positive(interaction_length_l, "interaction length");
  detail::require_positive(n_p, "n_p");
  detail::require_positive(intensity_enhancement, "intensity enhancement");
  if (chi2_electric.has_value() == chi2_magnetic.has_value())
    throw ConfigError("exactly one of chi2_electric / chi2_magnetic must be set");
  if (chi2_magnetic) detail::require_positive(pump_impedance_Zp, "pump impedance");
}

double solve_idler(double omega_p, double omega_s) {
  if (!(omega_s > 0.0)) throw DomainError("signal frequency must be > 0");
  if (!(omega_s < omega_p)) throw DomainError("signal frequency must be below the pump");
  return omega_p - omega_s;
}

Mismatch k_mismatch(const ThreeWaveState& st) {
  Mismatch m;
  m.vector = st.k_p - st.k_s - st.k_i;
  m.magnitude = m.vector.norm();
  m.collinear_scalar =
      (st.omega_p * st.n_p - st.omega_s * st.n_s - st.omega_i * st.n_i) / Constants::light_speed_c;
  return m;
}

double phase_sum_residual(double phase_p, double phase_s, double phase_i) {
  double r = std::remainder(phase_s + phase_i - phase_p, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

SpectralRadiance vacuum_radiance(double omega, double n_s) {
  detail::require_positive(omega, "omega");
  detail::require_positive(n_s, "n_s");
  return {vacuum_radiance_value(omega, n_s), omega};
}

double gain_prefactor(const GainContext& ctx, double omega_s, double omega_i) {
  detail::require_positive(omega_s, "omega_s");
  detail::require_positive(omega_i, "omega_i");
  detail::require_nonnegative(ctx.pump_intensity_Ip, "pump intensity");
  detail::require_positive(ctx.n_p, "n_p");
  using C = Constants;
  return std::sqrt(8.0 * omega_s * omega_i * ctx.effective_intensity() *
                   C::vacuum_permeability_mu0 / (C::light_speed_c * ctx.n_p));
}

double field_gain_dielectric(const GainContext& ctx, double omega_s, double omega_i) {
  if (!ctx.chi2_electric) throw ConfigError("chi2_electric is not set");
  return gain_prefactor(ctx, omega_s, omega_i) * kPi * *ctx.chi2_electric;
}

double field_gain_magnetic(const GainContext& ctx, double omega_s, double omega_i) {
  if (!ctx.chi2_magnetic) throw ConfigError("chi2_magnetic is not set");
  detail::require_positive(ctx.pump_impedance_Zp, "pump impedance");
  return gain_prefactor(ctx, omega_s, omega_i) * kPi * *ctx.chi2_magnetic / ctx.pump_impedance_Zp;
}

double medium_impedance(double mu_r, double eps_r) {
  detail::require_positive(mu_r, "mu_r");
  detail::require_positive(eps_r, "eps_r");
  return std::sqrt(mu_r * Constants::vacuum_permeability_mu0 /
                   (eps_r * Constants::vacuum_permittivity_eps0));
}

SpectralRadiance radiance_general(const SpectralRadiance& vacuum, double gamma, double delta_k_mag,
                                  double l) {
  detail::require_positive(l, "interaction length");
  detail::require_nonnegative(gamma, "gamma");
  const double g2 = gamma * gamma;
  const double x = g2 - 0.25 * delta_k_mag * delta_k_mag;
  return {vacuum.value * g2 * gain_shape(x, l), vacuum.at_omega};
}

SpectralRadiance radiance_low_gain(const SpectralRadiance& vacuum, double gamma, double delta_k_mag,
                                   double l) {
  detail::require_positive(l, "interaction length");
  const double arg = 0.5 * delta_k_mag * l;
  const double sinc = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
  return {vacuum.value * gamma * gamma * l * l * sinc * sinc, vacuum.at_omega};
}

MatchedRadiance radiance_matched_dielectric(const GainContext& ctx, double omega_s,
                                            double omega_i) {
  if (!ctx.chi2_electric) throw ConfigError("chi2_electric is not set");
  detail::require_positive(ctx.interaction_length_l, "interaction length");
  using C = Constants;
  const double chi = *ctx.chi2_electric;
  const double l = ctx.interaction_length_l;
  const double c3 = C::light_speed_c * C::light_speed_c * C::light_speed_c;
  MatchedRadiance out;
  out.radiance.at_omega = omega_s;
  out.radiance.value = C::reduced_planck_hbar * C::vacuum_permeability_mu0 *
                       std::pow(omega_s, 4) * omega_i * ctx.effective_intensity() * ctx.n_s *
                       ctx.n_s * chi * chi * l * l / (kPi * c3 * ctx.n_p);
  out.gain_length = field_gain_dielectric(ctx, omega_s, omega_i) * l;
  out.low_gain_valid = out.gain_length < 0.1;
  return out;
}

double band_power(double radiance, double bandwidth_hz, double solid_angle_sr, double area_m2) {
  detail::require_nonnegative(radiance, "radiance");
  detail::require_nonnegative(bandwidth_hz, "bandwidth");
  detail::require_nonnegative(solid_angle_sr, "solid angle");
  detail::require_nonnegative(area_m2, "area");
  return radiance * kTwoPi * bandwidth_hz * solid_angle_sr * area_m2;
}

}  // namespace yigbell::spdc
