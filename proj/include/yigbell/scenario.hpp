#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "yigbell/belltest.hpp"
#include "yigbell/ferrite.hpp"
#include "yigbell/linkbudget.hpp"
#include "yigbell/phasematch.hpp"

namespace yigbell::scenario {

/// Ferrite sample: a named preset, optionally with inline overrides, or a fully
/// inline material when preset is empty.
struct MaterialSpec {
  std::string preset = "yig_pure";
  ferrite::FerriteMaterial material = ferrite::material_preset("yig_pure");
};

/// Static bias given either as precession frequencies (f0, fM) or as an applied
/// field H0 with the material's static magnetization.
struct BiasSpec {
  std::optional<double> applied_field_H0;  // A/m
  double f0_hz = 15e9;
  double fM_hz = 6.9e9;

  ferrite::BiasState resolve(const ferrite::FerriteMaterial& mat) const;
};

struct PumpSpec {
  double power_W = 1.0;
  double area_m2 = 1e-4;
  double frequency_hz = 20e9;
  double alternate_power_W = 5.0;  // second pump level reported side by side

  double intensity() const { return power_W / area_m2; }
};

struct DispersionSpec {
  double f_min_hz = 5e9;
  double f_max_hz = 40e9;
  int points = 701;
  /// Propagation angle to the bias in degrees: 90 = transverse, 0 = longitudinal.
  double theta_deg = 90.0;
};

struct HysteresisSpec {
  std::string material_preset = "yig_ho_x1.5";
  double h_min = -50e3;  // A/m
  double h_max = 50e3;
  int points = 401;
};

struct SpdcSpec {
  double signal_frequency_hz = 10e9;
  double idler_frequency_hz = 10e9;
  // Dielectric reference case.
  double chi2_electric = 5e-12;  // m/V
  double n_dielectric = 2.2;
  double dielectric_length = 0.1;       // m
  double dielectric_bandwidth_hz = 5e9;
  // Magnetic case. chi2_magnetic defaults to the material value at the pump frequency.
  std::optional<double> chi2_magnetic;  // m/A
  double n_magnetic = 3.8;
  double magnetic_length = 3e-3;  // m
  double magnetic_bandwidth_hz = 10e9;
  /// Replaces the computed magnetic field gain when the medium is nonlinear.
  /// The default is the gain value printed with the worked example.
  std::optional<double> gamma_M_override = 630.0;  // 1/m
  double solid_angle_sr = 3.141592653589793;
  double area_m2 = 1e-4;
  double intensity_enhancement = 1.0;
};

struct PhasematchSpec {
  std::string index_model = "ferrite";  // "ferrite" | "constant"
  double n_strong = 3.834;              // constant model only
  double n_weak = 3.834;
  double pump_frequency_hz = 20e9;
  ferrite::Coupling pump_coupling = ferrite::Coupling::Weak;
  Eigen::Vector3d pump_direction = Eigen::Vector3d::UnitX();
  double theta_max = 1.2;        // rad
  double f_min_hz = 5e9;
  spdc::Interaction interaction = spdc::Interaction::TypeI;
  int n_theta = 101;
  int n_omega = 101;
  double refine_tol = 1e-6;
  double interaction_length = 3e-3;
  int refine_candidates = 5;
};

struct LinkBudgetSpec {
  linkbudget::LinkBudget budget;
  bool derive_nbar = false;  // replace nbar by the occupancy at signal_frequency
  bool Ps_from_flux = false;  // replace Ps by the magnetic band power of the flux chain
  double target_snr = 1.0;
  double frequency_scale = 2.0;  // for the thermal time-scaling row
};

struct Scenario {
  std::string name = "paper";
  MaterialSpec material;
  BiasSpec bias;
  PumpSpec pump;
  DispersionSpec dispersion;
  HysteresisSpec hysteresis;
  SpdcSpec spdc;
  PhasematchSpec phasematch;
  LinkBudgetSpec linkbudget;
  belltest::BellRunConfig bell;
  /// Coherence blocks used when the source is a hidden-variable model; each
  /// block carries its own hidden polarization.
  int lhv_coherence_blocks = 1600;
  std::string output_dir;  // empty: primary output goes to stdout
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const;
  phasematch::MatchProblem match_problem() const;
  /// Bell configuration with the scenario seed, thread count and, for the
  /// hidden-variable sources, lhv_coherence_blocks applied.
  belltest::BellRunConfig bell_config() const;
};

/// Built-in scenario carrying the paper's parameter values.
Scenario paper_defaults();

nlohmann::json to_json(const Scenario& s);
/// Missing keys keep their paper-default values; unknown keys are rejected.
Scenario from_json(const nlohmann::json& j);

Scenario load_scenario(const std::string& path);

/// Human-readable description of every accepted key and its unit.
std::string schema_text();

}  // namespace yigbell::scenario
