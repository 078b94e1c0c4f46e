#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace yigbell::ferrite {

using Complex = std::complex<double>;

enum class Branch { Ascending, Descending };

/// Modified-Langevin description of one branch of a hysteresis loop.
struct HysteresisModel {
  double Ms = 0.0;            // A/m
  double Hc = 0.0;            // A/m (coercivity)
  double remanence_Mr = 0.0;  // A/m
  double langevin_a = 0.0;    // 1/T
  Branch branch = Branch::Ascending;

  void validate() const;
};

/// Constitutive parameters of a garnet sample.
struct FerriteMaterial {
  std::string name;
  double eps_prime = 1.0;
  double loss_tangent = 0.0;
  double damping_alpha = 0.0;
  double saturation_magnetization_Ms = 0.0;  // A/m
  double static_magnetization_M0 = 0.0;      // A/m
  double resonance_linewidth_dH = 0.0;       // A/m
  std::optional<HysteresisModel> hysteresis;

  void validate() const;
  /// eps' (1 - j tan(delta)).
  Complex relative_permittivity() const;
};

/// Static bias expressed as the two gyromagnetic angular frequencies.
struct BiasState {
  double applied_field_H0 = 0.0;      // A/m
  double larmor_omega0 = 0.0;         // rad/s
  double magnetization_omegaM = 0.0;  // rad/s

  static BiasState from_fields(double H0, double magnetization);
  /// f0 = omega0/2pi, fM = omegaM/2pi in Hz.
  static BiasState from_frequencies(double f0, double fM);
};

enum class Geometry { Transverse, Longitudinal, Oblique };
enum class Coupling { Strong, Weak };

struct PropagationMode {
  Geometry geometry = Geometry::Transverse;
  double theta_k = 0.0;  // angle to the bias field, only read for Oblique
  Coupling coupling = Coupling::Strong;

  static PropagationMode transverse(Coupling c) { return {Geometry::Transverse, 0.0, c}; }
  static PropagationMode longitudinal(Coupling c) { return {Geometry::Longitudinal, 0.0, c}; }
  static PropagationMode oblique(double theta, Coupling c) { return {Geometry::Oblique, theta, c}; }
  /// Oblique, except exactly 0 and pi/2 (after folding into [0, pi/2]) map to
  /// the principal geometries.
  static PropagationMode at_angle(double theta_to_bias, Coupling c);
};

struct Permeability {
  Complex value{1.0, 0.0};
  bool at_pole = false;
};

/// n = n' - j n''; `extinction` is n'' >= 0 for passive media.
struct RefractiveIndex {
  double real = 0.0;
  double extinction = 0.0;
  Complex squared{0.0, 0.0};  // eps_r * mu_eff
  bool at_pole = false;

  bool propagating() const { return !at_pole && real > extinction; }
};

/// |gamma_s| = g_e mu0 e / (2 m_e), in m/(A s).
double gyromagnetic_ratio();

/// omega_L = |gamma_s| H.
double larmor_frequency(double H);

/// Effective scalar permeability of the Polder tensor for one plane-wave mode.
///
/// Losses enter through omega0 -> omega0 + j alpha omega. With
/// mu = 1 + wM w0'/(w0'^2 - w^2) and kappa = wM w/(w0'^2 - w^2):
///   transverse strong   (mu^2 - kappa^2)/mu = ((w0'+wM)^2 - w^2)/(w0'(w0'+wM) - w^2)
///   transverse weak     1
///   longitudinal        mu +- kappa = 1 + wM/(w0' -+ w)
///   oblique             the two roots of the gyrotropic plane-wave dispersion
///                       (mu_z = 1), continuous into the principal forms.
/// The transverse strong mode resonates at sqrt(w0(w0+wM)) and its permeability
/// returns through zero at w0 + wM.
Permeability polder_permeability(const FerriteMaterial& mat, const BiasState& bias, double omega,
                                 const PropagationMode& mode);

/// n = sqrt(eps_r mu_eff) on the passive branch.
RefractiveIndex refractive_index(const FerriteMaterial& mat, const BiasState& bias, double omega,
                                 const PropagationMode& mode);

/// Langevin function coth(x) - 1/x with L(0) = 0.
double langevin(double x);

/// Ms L(mu0 a (H - Hc)) on the ascending branch; M_desc(H) = -M_asc(-H).
double hysteresis_magnetization(const HysteresisModel& model, double H);

/// Solve Ms L(mu0 a Hc) = Mr for a (1/T).
double fit_langevin_a(double Ms, double Mr, double Hc);

/// Frequency-doubling second-order magnetic susceptibility |gamma_s| M0/(omega_L dH), m/A.
double chi2_magnetic(const FerriteMaterial& mat, double pump_omega_L);

/// chi2 / (chi1(w1+w2) chi1(w1) chi1(w2)).
double miller_delta(double chi2, double chi1_at_sum, double chi1_at_w1, double chi1_at_w2);

/// Named presets: "yig_pure", "yig_ho_x1.5".
FerriteMaterial material_preset(const std::string& name);
std::vector<std::string> material_preset_names();

}  // namespace yigbell::ferrite
