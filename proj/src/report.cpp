#include "yigbell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "yigbell/constants.hpp"
#include "yigbell/csv.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/ferrite.hpp"
#include "yigbell/spdc.hpp"
#include "yigbell/thermal.hpp"

namespace yigbell::report {
namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_angle(const std::optional<double>& a) { return a ? json(*a) : json(nullptr); }

std::string coupling_name(ferrite::Coupling c) { return c == ferrite::Coupling::Strong ? "strong" : "weak"; }

}  // namespace

// ---- tables -----------------------------------------------------------------

void Table::write_csv(std::ostream& os) const {
  write_csv_header(os, columns);
  for (const auto& r : rows) write_csv_row(os, r);
}

json Table::to_json() const {
  json j = json::object();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    json col = json::array();
    for (const auto& r : rows) col.push_back(number_or_null(r[c]));
    j[columns[c]] = col;
  }
  return j;
}

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ConfigError("no column " + name);
  const std::size_t c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

Table dispersion_table(const scenario::Scenario& s) {
  return dispersion_table(s, s.dispersion.f_min_hz, s.dispersion.f_max_hz, s.dispersion.points);
}

Table dispersion_table(const scenario::Scenario& s, double f_min, double f_max, int points) {
  if (points < 2) throw ConfigError("dispersion needs at least 2 points");
  if (!(f_min > 0.0) || !(f_max > f_min)) throw ConfigError("dispersion range must satisfy 0 < f_min < f_max");
  const ferrite::FerriteMaterial& mat = s.material.material;
  const ferrite::BiasState bias = s.bias.resolve(mat);
  const double theta = s.dispersion.theta_deg * kPi / 180.0;
  const auto strong = ferrite::PropagationMode::at_angle(theta, ferrite::Coupling::Strong);
  const auto weak = ferrite::PropagationMode::at_angle(theta, ferrite::Coupling::Weak);
  Table t;
  t.columns = {"f_hz", "strong_n", "strong_extinction", "weak_n", "weak_extinction", "strong_mu_re", "strong_mu_im"};
  for (int i = 0; i < points; ++i) {
    const double f = f_min + (f_max - f_min) * i / (points - 1);
    const double w = kTwoPi * f;
    const auto ns = ferrite::refractive_index(mat, bias, w, strong);
    const auto nw = ferrite::refractive_index(mat, bias, w, weak);
    const auto mu = ferrite::polder_permeability(mat, bias, w, strong);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back({f, ns.at_pole ? nan : ns.real, ns.at_pole ? nan : ns.extinction, nw.real, nw.extinction,
                      mu.at_pole ? nan : mu.value.real(), mu.at_pole ? nan : mu.value.imag()});
  }
  return t;
}

Table hysteresis_table(const scenario::Scenario& s) {
  const ferrite::FerriteMaterial mat = s.hysteresis.material_preset.empty()
                                           ? s.material.material
                                           : ferrite::material_preset(s.hysteresis.material_preset);
  if (!mat.hysteresis) throw ConfigError("material '" + mat.name + "' has no hysteresis model");
  ferrite::HysteresisModel up = *mat.hysteresis;
  up.branch = ferrite::Branch::Ascending;
  ferrite::HysteresisModel down = up;
  down.branch = ferrite::Branch::Descending;
  Table t;
  t.columns = {"H_A_per_m", "M_ascending", "M_descending"};
  const int n = s.hysteresis.points;
  for (int i = 0; i < n; ++i) {
    const double h = s.hysteresis.h_min + (s.hysteresis.h_max - s.hysteresis.h_min) * i / (n - 1);
    t.rows.push_back({h, ferrite::hysteresis_magnetization(up, h), ferrite::hysteresis_magnetization(down, h)});
  }
  return t;
}

// ---- flux -------------------------------------------------------------------

FluxResult compute_flux(const scenario::Scenario& s) {
  s.validate();
  const scenario::SpdcSpec& o = s.spdc;
  const double ws = kTwoPi * o.signal_frequency_hz;
  const double wi = kTwoPi * o.idler_frequency_hz;
  FluxResult f;

  spdc::GainContext mag;
  mag.pump_intensity_Ip = s.pump.intensity();
  mag.intensity_enhancement = o.intensity_enhancement;
  mag.chi2_magnetic = o.chi2_magnetic ? *o.chi2_magnetic
                                      : ferrite::chi2_magnetic(s.material.material, kTwoPi * s.pump.frequency_hz);
  mag.n_p = mag.n_s = mag.n_i = o.n_magnetic;
  mag.pump_impedance_Zp = spdc::medium_impedance(1.0, s.material.material.eps_prime);
  mag.interaction_length_l = o.magnetic_length;

  f.pump_intensity = mag.effective_intensity();
  f.chi2_magnetic = *mag.chi2_magnetic;
  f.pump_impedance = mag.pump_impedance_Zp;
  f.gamma_M_literal = spdc::field_gain_magnetic(mag, ws, wi);
  const bool nonlinear = f.chi2_magnetic > 0.0 && f.pump_intensity > 0.0;
  f.gamma_M_used = (nonlinear && o.gamma_M_override) ? *o.gamma_M_override : f.gamma_M_literal;

  const spdc::SpectralRadiance vac_m = spdc::vacuum_radiance(ws, o.n_magnetic);
  f.vacuum_radiance_magnetic = vac_m.value;
  f.radiance_literal = spdc::radiance_general(vac_m, f.gamma_M_literal, 0.0, o.magnetic_length).value;
  f.radiance = spdc::radiance_general(vac_m, f.gamma_M_used, 0.0, o.magnetic_length).value;
  f.band_power_literal = spdc::band_power(f.radiance_literal, o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2);
  f.band_power = spdc::band_power(f.radiance, o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2);
  f.photon_rate = core::photon_rate_from_power(f.band_power, o.signal_frequency_hz);

  // Second pump level: the gain scales with the square root of the intensity.
  spdc::GainContext alt = mag;
  alt.pump_intensity_Ip = s.pump.alternate_power_W / s.pump.area_m2;
  f.alternate_intensity = alt.effective_intensity();
  f.gamma_M_alternate = f.pump_intensity > 0.0
                            ? f.gamma_M_used * std::sqrt(f.alternate_intensity / f.pump_intensity)
                            : spdc::field_gain_magnetic(alt, ws, wi);
  f.radiance_alternate = spdc::radiance_general(vac_m, f.gamma_M_alternate, 0.0, o.magnetic_length).value;
  f.band_power_alternate =
      spdc::band_power(f.radiance_alternate, o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2);

  spdc::GainContext die;
  die.pump_intensity_Ip = s.pump.intensity();
  die.intensity_enhancement = o.intensity_enhancement;
  die.chi2_electric = o.chi2_electric;
  die.n_p = die.n_s = die.n_i = o.n_dielectric;
  die.interaction_length_l = o.dielectric_length;
  die.pump_impedance_Zp = spdc::medium_impedance(1.0, o.n_dielectric * o.n_dielectric);
  f.gamma_E = spdc::field_gain_dielectric(die, ws, wi);
  const spdc::MatchedRadiance matched = spdc::radiance_matched_dielectric(die, ws, wi);
  f.gain_length_E = matched.gain_length;
  f.low_gain_valid = matched.low_gain_valid;
  f.radiance_matched_dielectric = matched.radiance.value;
  const spdc::SpectralRadiance vac_e = spdc::vacuum_radiance(ws, o.n_dielectric);
  f.vacuum_radiance_dielectric = vac_e.value;
  f.matched_identity = vac_e.value * f.gamma_E * f.gamma_E * o.dielectric_length * o.dielectric_length;
  f.band_power_dielectric =
      spdc::band_power(f.radiance_matched_dielectric, o.dielectric_bandwidth_hz, o.solid_angle_sr, o.area_m2);
  return f;
}

json flux_json(const FluxResult& f) {
  return {
      {"magnetic",
       {{"pump_intensity_W_per_m2", f.pump_intensity},
        {"chi2_magnetic_m_per_A", f.chi2_magnetic},
        {"pump_impedance_ohm", f.pump_impedance},
        {"gamma_M_literal_per_m", f.gamma_M_literal},
        {"gamma_M_used_per_m", f.gamma_M_used},
        {"vacuum_radiance", f.vacuum_radiance_magnetic},
        {"radiance_literal", f.radiance_literal},
        {"radiance", f.radiance},
        {"band_power_literal_W", f.band_power_literal},
        {"band_power_W", f.band_power},
        {"photon_rate_per_s", f.photon_rate},
        {"alternate_pump",
         {{"pump_intensity_W_per_m2", f.alternate_intensity},
          {"gamma_M_per_m", f.gamma_M_alternate},
          {"radiance", f.radiance_alternate},
          {"band_power_W", f.band_power_alternate}}}}},
      {"dielectric",
       {{"gamma_E_per_m", f.gamma_E},
        {"gain_length", f.gain_length_E},
        {"low_gain_valid", f.low_gain_valid},
        {"vacuum_radiance", f.vacuum_radiance_dielectric},
        {"radiance_matched", f.radiance_matched_dielectric},
        {"vacuum_times_gain_squared", f.matched_identity},
        {"band_power_W", f.band_power_dielectric}}},
      {"units",
       {{"radiance", "W/m^2/sr/(rad/s)"}, {"gamma", "1/m"}, {"power", "W"}, {"photon_rate", "1/s"}}}};
}

// ---- link budget ------------------------------------------------------------

LinkBudgetReport compute_linkbudget(const scenario::Scenario& s) {
  LinkBudgetReport r;
  linkbudget::LinkBudget b = s.linkbudget.budget;
  if (s.linkbudget.derive_nbar) b = b.with_derived_nbar();
  if (s.linkbudget.Ps_from_flux) b.entangled_power_Ps = compute_flux(s).band_power;
  b.validate();
  r.budget = b;
  r.noise_factor = b.noise_factor();
  r.noise_power = linkbudget::noise_power(b);
  r.received_power = b.entangled_power_Ps / b.loss_L;
  r.amplified_thermal = b.nbar * r.received_power;
  r.nbar_bose_einstein = core::mean_thermal_photons(b.signal_frequency, b.ambient_T0);
  r.snr_arm = linkbudget::snr_arm(b);
  r.snr_mixer1 = linkbudget::snr_mixer1(b);
  r.target_snr = s.linkbudget.target_snr;
  r.time = linkbudget::integration_time(b, r.target_snr);
  r.snr_out_at_time = linkbudget::snr_out(b, r.time.general);
  r.frequency_scale = s.linkbudget.frequency_scale;
  r.scaling = linkbudget::thermal_time_scaling(b.signal_frequency, b.ambient_T0, r.frequency_scale);
  return r;
}

json linkbudget_json(const LinkBudgetReport& r) {
  const linkbudget::LinkBudget& b = r.budget;
  return {{"inputs",
           {{"noise_figure_dB", b.noise_figure_dB},
            {"noise_factor_linear", r.noise_factor},
            {"ambient_T0_K", b.ambient_T0},
            {"bandwidth_B_Hz", b.bandwidth_B},
            {"loss_L", b.loss_L},
            {"entangled_power_Ps_W", b.entangled_power_Ps},
            {"nbar", b.nbar},
            {"signal_frequency_Hz", b.signal_frequency}}},
          {"noise_power_FkT0B_W", r.noise_power},
          {"received_power_Ps_over_L_W", r.received_power},
          {"amplified_thermal_nbar_Ps_over_L_W", r.amplified_thermal},
          {"nbar_bose_einstein", r.nbar_bose_einstein},
          {"snr_arm", r.snr_arm},
          {"snr_mixer1", r.snr_mixer1},
          {"target_snr", r.target_snr},
          {"integration_time_s", r.time.general},
          {"integration_time_thermal_dominated_s", r.time.thermal_dominated},
          {"snr_out_at_integration_time", r.snr_out_at_time},
          {"frequency_scaling",
           {{"factor", r.frequency_scale},
            {"time_ratio_rayleigh_jeans", r.scaling.rayleigh_jeans_ratio},
            {"time_ratio_bose_einstein", r.scaling.bose_einstein_ratio}}}};
}

// ---- phase matching ---------------------------------------------------------

json match_result_json(const phasematch::MatchResult& r, const phasematch::MatchProblem& p) {
  auto point = [](const phasematch::MismatchPoint& m) {
    return json{{"theta_s_rad", m.theta_s},
                {"theta_i_rad", m.theta_i},
                {"omega_s_rad_per_s", m.omega_s},
                {"omega_i_rad_per_s", m.omega_i},
                {"delta_k_rad_per_m", number_or_null(m.delta_k)},
                {"feasible", m.feasible}};
  };
  std::size_t feasible = 0;
  for (const auto& m : r.landscape.points) feasible += m.feasible ? 1 : 0;
  return {{"best", point(r.best)},
          {"coarse_best", point(r.coarse_best)},
          {"penalty_sinc2", number_or_null(r.penalty_sinc2)},
          {"converged", r.converged},
          {"rounds", r.rounds},
          {"grid", {{"n_theta", p.n_theta}, {"n_omega", p.n_omega}, {"feasible_points", feasible}}},
          {"problem",
           {{"omega_p_rad_per_s", p.pump.omega_p},
            {"pump_coupling", coupling_name(p.pump.coupling)},
            {"pump_angle_to_bias_rad", p.pump_angle_to_bias()},
            {"theta_max_rad", p.theta_max},
            {"omega_min_rad_per_s", p.omega_min},
            {"interaction", p.interaction == spdc::Interaction::TypeI ? "type1" : "type2"},
            {"refine_tol_rad_per_m", p.refine_tol},
            {"interaction_length_m", p.interaction_length}}}};
}

// ---- Bell test --------------------------------------------------------------

json bell_result_json(const belltest::BellRunResult& r, const belltest::BellRunConfig& c,
                      const json& config_echo) {
  json n = json::array();
  for (const auto& rec : r.N_values)
    n.push_back({{"setting", rec.label}, {"a_rad", optional_angle(rec.a)}, {"b_rad", optional_angle(rec.b)},
                 {"N", rec.N}});
  json e = json::array();
  for (const auto& rec : r.E_values) e.push_back({{"a_rad", rec.a}, {"b_rad", rec.b}, {"E", rec.E}});
  const bool twin = r.channel_model == belltest::ChannelModel::TwinChannel;
  return {{"statistic", twin ? "CHSH S" : "single-channel S_CH"},
          {"channel_model", twin ? "twin" : "single"},
          {"state", c.state.description()},
          {"S", r.S},
          {"S_stderr", r.S_stderr},
          {"classical_bound", twin ? 2.0 : 0.0},
          {"samples_used", r.samples_used},
          {"seed", r.seed},
          {"N_values", n},
          {"E_values", e},
          {"config", config_echo}};
}

Table bell_result_table(const belltest::BellRunResult& r) {
  Table t;
  t.columns = {"a_rad", "b_rad", "N"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& rec : r.N_values) t.rows.push_back({rec.a.value_or(nan), rec.b.value_or(nan), rec.N});
  return t;
}

void write_trajectory_csv(std::ostream& os, const belltest::RunOutput& run) {
  write_csv_header(os, {"samples", "re_Z", "im_Z", "abs_Z"});
  for (const auto& [k, z] : run.trajectory)
    write_csv_row(os, {static_cast<double>(k), z.real(), z.imag(), std::abs(z)});
}

// ---- paper report -----------------------------------------------------------

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Flag: return "FLAG";
    case Status::Fail: return "FAIL";
  }
  return "FAIL";
}

bool PaperReport::all_ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const Row& r) { return r.status == Status::Fail; });
}

namespace {

std::string percent(double tol) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "within %g%%", tol * 100.0);
  return buf;
}

Row relative(std::string q, double computed, double paper, double tol, std::string note = {}) {
  const bool ok = std::abs(computed - paper) <= tol * std::abs(paper);
  return {std::move(q), computed, paper, percent(tol), ok ? Status::Pass : Status::Fail, std::move(note)};
}

Row absolute(std::string q, double computed, double paper, double tol, std::string note = {}) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "within +-%g", tol);
  const bool ok = std::abs(computed - paper) <= tol;
  return {std::move(q), computed, paper, buf, ok ? Status::Pass : Status::Fail, std::move(note)};
}

/// Known discrepancy: FLAG while within the stated loose bound, FAIL beyond it.
Row within_factor(std::string q, double computed, double paper, double factor, std::string note) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "within factor %g (flagged)", factor);
  const double ratio = computed / paper;
  const bool ok = ratio > 0.0 && ratio <= factor && ratio >= 1.0 / factor;
  return {std::move(q), computed, paper, buf, ok ? Status::Flag : Status::Fail, std::move(note)};
}

Row recorded(std::string q, double computed, double paper, std::string note) {
  return {std::move(q), computed, paper, "recorded, not forced", Status::Flag, std::move(note)};
}

/// Frequency of the largest strong-mode extinction.
double extinction_peak(const Table& t) {
  const auto f = t.column("f_hz");
  const auto k = t.column("strong_extinction");
  std::size_t best = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::isfinite(k[i]) && (!std::isfinite(k[best]) || k[i] > k[best])) best = i;
  return f[best];
}

/// Upward zero crossing of Re(mu) above the resonance, linearly interpolated.
double cutoff_crossing(const Table& t) {
  const auto f = t.column("f_hz");
  const auto mu = t.column("strong_mu_re");
  for (std::size_t i = 1; i < mu.size(); ++i) {
    if (std::isfinite(mu[i - 1]) && std::isfinite(mu[i]) && mu[i - 1] < 0.0 && mu[i] >= 0.0)
      return f[i - 1] + (f[i] - f[i - 1]) * (-mu[i - 1]) / (mu[i] - mu[i - 1]);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

PaperReport build_paper_report(const scenario::Scenario& s) {
  s.validate();
  PaperReport rep;
  auto& rows = rep.rows;
  const double T = s.linkbudget.budget.ambient_T0;

  rows.push_back(absolute("thermal occupancy nbar(10 GHz, 290 K)", core::mean_thermal_photons(10e9, T), 604.0, 1.0));
  rows.push_back(relative("hf = kT crossover frequency at 290 K [Hz]", core::crossover_frequency(T), 6e12, 0.01,
                          "printed as 6 THz"));
  rows.push_back(recorded("thermal occupancy nbar(5e14 Hz, 290 K)", core::mean_thermal_photons(5e14, T), 2e-22,
                          "direct evaluation; the printed value corresponds to about 3e14 Hz"));

  const double chi2 = ferrite::chi2_magnetic(ferrite::material_preset("yig_pure"), kTwoPi * 20e9);
  rows.push_back(relative("chi2_M(238 kA/m, 28 A/m, 20 GHz) [m/A]", chi2, 0.015, 0.05,
                          "a later paragraph prints 0.0015"));

  ferrite::HysteresisModel ho = *ferrite::material_preset("yig_ho_x1.5").hysteresis;
  rows.push_back(absolute("Langevin fit a for Ho x=1.5 [1/T]", ho.langevin_a, 0.2024, 0.001));
  ho.branch = ferrite::Branch::Descending;
  rows.push_back(relative("remanence M(H=0), descending branch [A/m]", ferrite::hysteresis_magnetization(ho, 0.0),
                          561.0, 1e-6));

  const FluxResult flux = compute_flux(s);
  const scenario::SpdcSpec& o = s.spdc;
  rows.push_back(relative("dielectric field gain gamma_E [1/m]", flux.gamma_E, 1.2e-5, 0.05));
  rows.push_back(within_factor("matched dielectric radiance [W/m^2/sr/(rad/s)]", flux.radiance_matched_dielectric,
                               6.88e-32, 10.0, "literal evaluation is about 8x below the printed value"));
  rows.push_back(relative("matched radiance = I_vac gamma_E^2 l^2", flux.radiance_matched_dielectric,
                          flux.matched_identity, 0.005, "internal consistency"));
  const spdc::SpectralRadiance vac_e = spdc::vacuum_radiance(kTwoPi * o.signal_frequency_hz, o.n_dielectric);
  rows.push_back(relative("general radiance, low-gain limit = matched radiance",
                          spdc::radiance_general(vac_e, flux.gamma_E, 0.0, o.dielectric_length).value,
                          flux.radiance_matched_dielectric, 0.005, "internal consistency"));
  rows.push_back(relative("dielectric band power from printed radiance [W]",
                          spdc::band_power(6.88e-32, o.dielectric_bandwidth_hz, o.solid_angle_sr, o.area_m2),
                          6.79e-25, 0.02));
  rows.push_back(within_factor("magnetic field gain gamma_M, literal [1/m]", flux.gamma_M_literal, 630.0, 2.5,
                               "printed gain not recoverable from the stated inputs"));
  const spdc::SpectralRadiance vac_m = spdc::vacuum_radiance(kTwoPi * o.signal_frequency_hz, o.n_magnetic);
  const double rad630 = spdc::radiance_general(vac_m, 630.0, 0.0, o.magnetic_length).value;
  rows.push_back(relative("magnetic radiance at gamma = 630/m [W/m^2/sr/(rad/s)]", rad630, 1.80e-19, 0.03));
  rows.push_back(relative("general radiance at zero mismatch = I_vac sinh^2(gamma l)",
                          rad630, vac_m.value * std::pow(std::sinh(630.0 * o.magnetic_length), 2), 0.005,
                          "internal consistency"));
  rows.push_back(relative("band power from printed radiance [W]",
                          spdc::band_power(1.80e-19, o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2), 3.56e-12,
                          0.02));
  const double bp630 = spdc::band_power(rad630, o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2);
  rows.push_back(relative("band power from computed radiance [W]", bp630, 3.56e-12, 0.03));
  rows.push_back(relative("entangled photon rate [1/s]", core::photon_rate_from_power(bp630, o.signal_frequency_hz),
                          0.5e12, 0.10));
  const double bp5 = spdc::band_power(
      spdc::radiance_general(vac_m, 630.0 * std::sqrt(5.0), 0.0, o.magnetic_length).value,
      o.magnetic_bandwidth_hz, o.solid_angle_sr, o.area_m2);
  rows.push_back(recorded("band power with gain rescaled to 5 W/cm^2 [W]", bp5, 3.56e-12,
                          "printed figure is labelled 5 W/cm^2 but follows from the 1 W/cm^2 gain"));

  linkbudget::LinkBudget b;  // printed budget inputs
  b.ambient_T0 = T;
  rows.push_back(relative("receiver noise power F k T0 B [W]", linkbudget::noise_power(b), 71e-12, 0.02,
                          "noise figure read as 2.5 dB"));
  rows.push_back(relative("per-arm SNR_1", linkbudget::snr_arm(b), 1.55e-3, 0.02));
  rows.push_back(relative("mixer-1 SNR_2", linkbudget::snr_mixer1(b), 2.41e-6, 0.03));
  const double t1 = linkbudget::integration_time(b, 1.0).general;
  rows.push_back(relative("integration time for SNR = 1 [s]", t1, 8.59, 0.05));
  rows.push_back(relative("SNR after 8.59 s", linkbudget::snr_out(b, 8.59), 1.0, 0.03));
  const auto scaling = linkbudget::thermal_time_scaling(b.signal_frequency, T, 2.0);
  rows.push_back(absolute("time ratio for doubled frequency, nbar = kT/hf", scaling.rayleigh_jeans_ratio, 1.0 / 32,
                          1e-9));
  rows.push_back(relative("time ratio for doubled frequency, Bose-Einstein nbar", scaling.bose_einstein_ratio,
                          1.0 / 32, 0.01));

  const Table disp = dispersion_table(s, 5e9, 40e9, 3501);
  const double f0 = s.bias.f0_hz, fm = s.bias.fM_hz;
  rows.push_back(relative("strong-mode resonance (extinction peak) [Hz]", extinction_peak(disp),
                          std::sqrt(f0 * (f0 + fm)), 0.005, "expected sqrt(f0 (f0 + fM))"));
  rows.push_back(absolute("strong-mode permeability zero crossing [Hz]", cutoff_crossing(disp), f0 + fm, 0.05e9,
                          "expected f0 + fM"));
  rows.push_back(absolute("weak-mode refractive index", disp.column("weak_n").front(),
                          std::sqrt(s.material.material.eps_prime), 1e-6));

  phasematch::MatchProblem pm = s.match_problem();
  const phasematch::MatchResult match = phasematch::optimize_phase_match(pm);
  rows.push_back({"phase-match residual |dk| [rad/m]", match.best.delta_k, 0.0, "optimizer converged",
                  match.converged ? Status::Pass : Status::Fail, "no printed value"});

  belltest::BellRunConfig q = s.bell_config();
  q.source = belltest::SourceModel::Quantum;
  q.coherence_blocks = s.bell.coherence_blocks;
  q.channel_model = belltest::ChannelModel::TwinChannel;
  rows.push_back(absolute("CHSH S, quantum source", belltest::run_chsh(q).S, 2.0 * std::sqrt(2.0), 0.05,
                          "textbook maximum"));
  belltest::BellRunConfig l = q;
  l.source = belltest::SourceModel::LocalHiddenVariable;
  l.coherence_blocks = s.lhv_coherence_blocks;
  rows.push_back(absolute("CHSH S, local hidden-variable source", belltest::run_chsh(l).S, std::sqrt(2.0), 0.05,
                          "Malus-law model"));
  q.channel_model = belltest::ChannelModel::SingleChannel;
  rows.push_back(absolute("single-channel S_CH, quantum source", belltest::run_single_channel(q).S,
                          (std::sqrt(2.0) - 1.0) / 2.0, 0.02));
  return rep;
}

json report_json(const PaperReport& r) {
  json rows = json::array();
  for (const Row& row : r.rows)
    rows.push_back({{"quantity", row.quantity},
                    {"computed", number_or_null(row.computed)},
                    {"paper", row.paper},
                    {"criterion", row.criterion},
                    {"status", to_string(row.status)},
                    {"note", row.note}});
  return {{"rows", rows}, {"all_ok", r.all_ok()}};
}

void write_report_text(std::ostream& os, const PaperReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-56s %16s %16s  %-6s %s\n", "quantity", "computed", "paper", "status",
                "criterion");
  os << buf;
  for (const Row& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-56s %16s %16s  %-6s %s%s%s\n", row.quantity.c_str(),
                  format_number(row.computed).c_str(), format_number(row.paper).c_str(),
                  to_string(row.status).c_str(), row.criterion.c_str(), row.note.empty() ? "" : "; ",
                  row.note.c_str());
    os << buf;
  }
}

void write_report_csv(std::ostream& os, const PaperReport& r) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  os << "quantity,computed,paper,status,criterion,note\n";
  for (const Row& row : r.rows)
    os << quote(row.quantity) << ',' << format_number(row.computed) << ',' << format_number(row.paper) << ','
       << to_string(row.status) << ',' << quote(row.criterion) << ',' << quote(row.note) << '\n';
}

// ---- SVG --------------------------------------------------------------------

void write_svg_plot(std::ostream& os, const std::string& title, const std::string& x_label,
                    const std::vector<double>& x,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const double W = 720, H = 440, L = 70, R = 160, Tm = 40, B = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (double v : x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  for (const auto& [name, y] : series)
    for (double v : y)
      if (std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - Tm - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << Tm << "\" width=\"" << W - L - R << "\" height=\"" << H - Tm - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << x_label << " [" << format_number(xmin) << ", " << format_number(xmax) << "]</text>\n";
  os << "<text x=\"" << L - 6 << "\" y=\"" << Tm + 10 << "\" text-anchor=\"end\" font-size=\"11\">"
     << format_number(ymax) << "</text>\n";
  os << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"11\">"
     << format_number(ymin) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& [name, y] = series[s];
    const char* color = colors[s % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
      if (!std::isfinite(y[i])) continue;
      os << format_number(px(x[i])) << ',' << format_number(py(y[i])) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R + 10 << "\" y=\"" << Tm + 16 + 18 * s << "\" font-size=\"12\" fill=\"" << color
       << "\">" << name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace yigbell::report
