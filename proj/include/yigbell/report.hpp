#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "yigbell/belltest.hpp"
#include "yigbell/linkbudget.hpp"
#include "yigbell/phasematch.hpp"
#include "yigbell/scenario.hpp"

namespace yigbell::report {

using nlohmann::json;

/// Column-oriented numeric table (CSV rows share one header).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const;
  json to_json() const;
  std::vector<double> column(const std::string& name) const;
};

/// f, n and extinction of the strong and weak modes, Re/Im of the strong permeability.
Table dispersion_table(const scenario::Scenario& s);
/// Same on an explicit frequency grid.
Table dispersion_table(const scenario::Scenario& s, double f_min, double f_max, int points);

/// H, ascending and descending branch magnetization.
Table hysteresis_table(const scenario::Scenario& s);

struct FluxResult {
  // magnetic chain
  double pump_intensity = 0.0;        // W/m^2 after enhancement
  double chi2_magnetic = 0.0;         // m/A
  double pump_impedance = 0.0;        // ohm
  double gamma_M_literal = 0.0;       // 1/m
  double gamma_M_used = 0.0;          // 1/m
  double vacuum_radiance_magnetic = 0.0;
  double radiance_literal = 0.0;
  double radiance = 0.0;              // with gamma_M_used
  double band_power_literal = 0.0;
  double band_power = 0.0;            // W
  double photon_rate = 0.0;           // 1/s
  double alternate_intensity = 0.0;
  double gamma_M_alternate = 0.0;
  double radiance_alternate = 0.0;
  double band_power_alternate = 0.0;
  // dielectric reference
  double gamma_E = 0.0;
  double gain_length_E = 0.0;
  bool low_gain_valid = true;
  double vacuum_radiance_dielectric = 0.0;
  double radiance_matched_dielectric = 0.0;
  double matched_identity = 0.0;      // I_vac gamma_E^2 l^2
  double band_power_dielectric = 0.0;
};

FluxResult compute_flux(const scenario::Scenario& s);
json flux_json(const FluxResult& f);

struct LinkBudgetReport {
  linkbudget::LinkBudget budget;  // effective inputs
  double noise_factor = 0.0;
  double noise_power = 0.0;
  double received_power = 0.0;     // Ps / L
  double amplified_thermal = 0.0;  // nbar Ps / L
  double nbar_bose_einstein = 0.0;
  double snr_arm = 0.0;
  double snr_mixer1 = 0.0;
  linkbudget::IntegrationTime time;
  double snr_out_at_time = 0.0;
  double target_snr = 1.0;
  double frequency_scale = 2.0;
  linkbudget::FrequencyScaling scaling;
};

LinkBudgetReport compute_linkbudget(const scenario::Scenario& s);
json linkbudget_json(const LinkBudgetReport& r);

json match_result_json(const phasematch::MatchResult& r, const phasematch::MatchProblem& p);

json bell_result_json(const belltest::BellRunResult& r, const belltest::BellRunConfig& c,
                      const json& config_echo);
Table bell_result_table(const belltest::BellRunResult& r);
void write_trajectory_csv(std::ostream& os, const belltest::RunOutput& run);

enum class Status { Pass, Flag, Fail };
std::string to_string(Status s);

/// One comparison of a computed value against the printed one.
struct Row {
  std::string quantity;
  double computed = 0.0;
  double paper = 0.0;
  std::string criterion;
  Status status = Status::Fail;
  std::string note;
};

struct PaperReport {
  std::vector<Row> rows;
  bool all_ok() const;  // no Fail rows
};

/// Runs every calculation with the given scenario and grades each landmark.
PaperReport build_paper_report(const scenario::Scenario& s);
json report_json(const PaperReport& r);
void write_report_text(std::ostream& os, const PaperReport& r);
void write_report_csv(std::ostream& os, const PaperReport& r);

/// Minimal static line plot.
void write_svg_plot(std::ostream& os, const std::string& title, const std::string& x_label,
                    const std::vector<double>& x,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace yigbell::report
