#include "yigbell/ferrite.hpp"

#include <cmath>
#include <limits>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"

namespace yigbell::ferrite {
namespace {

constexpr Complex kJ{0.0, 1.0};

// Relative size below which a denominator is treated as an exact pole.
constexpr double kPoleTolerance = 1e-14;

bool is_pole(Complex denom, double scale) { return std::abs(denom) <= kPoleTolerance * scale; }

// Square root on the branch with Im <= 0 (passive, n = n' - j n'').
Complex passive_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  if (r.imag() > 0.0) r = -r;
  return r;
}

double fold_angle(double theta) {
  double t = std::fmod(std::abs(theta), kPi);
  if (t > kPi / 2) t = kPi - t;
  return t;
}

Permeability oblique_permeability(Complex mu, Complex kappa, double theta, Coupling coupling) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double s2 = s * s;
  const double c2 = c * c;
  const Complex a = (mu * mu - kappa * kappa - mu) * s2;
  const Complex disc = a * a + 4.0 * kappa * kappa * c2;
  // The strong root is the one whose discriminant root aligns with
  // a + 2 kappa cos(theta), which is exact at theta = 0 and theta = pi/2.
  const Complex ref = a + 2.0 * kappa * c;
  Complex root = std::sqrt(disc);
  if ((root * std::conj(ref)).real() < 0.0) root = -root;
  const Complex denom = 2.0 * (mu * s2 + c2);
  const Complex numer = a + 2.0 * mu + (coupling == Coupling::Strong ? root : -root);
  Permeability out;
  out.value = numer / denom;
  out.at_pole = !std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) ||
                is_pole(denom, 1.0);
  return out;
}

}  // namespace

void HysteresisModel::validate() const {
  detail::require_positive(Ms, "hysteresis Ms");
  detail::require_positive(Hc, "hysteresis Hc");
  detail::require_positive(langevin_a, "hysteresis langevin_a");
  detail::require_nonnegative(remanence_Mr, "hysteresis remanence");
  if (!(remanence_Mr < Ms)) throw DomainError("hysteresis remanence must be < Ms");
}

void FerriteMaterial::validate() const {
  if (!(eps_prime > 1.0)) throw DomainError("eps_prime must be > 1");
  detail::require_nonnegative(loss_tangent, "loss_tangent");
  if (!(damping_alpha > 0.0 && damping_alpha < 1.0))
    throw DomainError("damping_alpha must lie in (0, 1)");
  detail::require_positive(saturation_magnetization_Ms, "Ms");
  detail::require_nonnegative(static_magnetization_M0, "M0");
  detail::require_positive(resonance_linewidth_dH, "dH");
  if (static_magnetization_M0 > saturation_magnetization_Ms)
    throw DomainError("M0 must not exceed Ms");
  if (hysteresis) hysteresis->validate();
}

Complex FerriteMaterial::relative_permittivity() const {
  return eps_prime * Complex(1.0, -loss_tangent);
}

BiasState BiasState::from_fields(double H0, double magnetization) {
  return {H0, larmor_frequency(H0), larmor_frequency(magnetization)};
}

BiasState BiasState::from_frequencies(double f0, double fM) {
  detail::require_nonnegative(f0, "f0");
  detail::require_nonnegative(fM, "fM");
  const double gamma = gyromagnetic_ratio();
  return {kTwoPi * f0 / gamma, kTwoPi * f0, kTwoPi * fM};
}

PropagationMode PropagationMode::at_angle(double theta_to_bias, Coupling c) {
  const double t = fold_angle(theta_to_bias);
  if (t == 0.0) return longitudinal(c);
  if (t == kPi / 2) return transverse(c);
  return oblique(t, c);
}

double gyromagnetic_ratio() {
  using C = Constants;
  return C::lande_g_factor_ge * C::vacuum_permeability_mu0 * C::electron_charge_e /
         (2.0 * C::electron_mass_me);
}

double larmor_frequency(double H) {
  detail::require_nonnegative(H, "H");
  return gyromagnetic_ratio() * H;
}

Permeability polder_permeability(const FerriteMaterial& mat, const BiasState& bias, double omega,
                                 const PropagationMode& mode) {
  detail::require_positive(omega, "omega");
  const Complex w0 = bias.larmor_omega0 + kJ * mat.damping_alpha * omega;
  const double wM = bias.magnetization_omegaM;
  const double w2 = omega * omega;
  const double scale = std::abs(w0) * (std::abs(w0) + wM) + w2;

  Permeability out;
  switch (mode.geometry) {
    case Geometry::Transverse: {
      if (mode.coupling == Coupling::Weak) return out;
      const Complex denom = w0 * (w0 + wM) - w2;
      if (is_pole(denom, scale)) {
        out.at_pole = true;
        out.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
        return out;
      }
      out.value = ((w0 + wM) * (w0 + wM) - w2) / denom;
      return out;
    }
    case Geometry::Longitudinal: {
      const Complex denom = mode.coupling == Coupling::Strong ? w0 - omega : w0 + omega;
      if (is_pole(denom, std::abs(w0) + omega)) {
        out.at_pole = true;
        out.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
        return out;
      }
      out.value = 1.0 + wM / denom;
      return out;
    }
    case Geometry::Oblique: {
      if (!(mode.theta_k > 0.0 && mode.theta_k < kPi / 2))
        throw DomainError("oblique theta_k must lie in (0, pi/2)");
      const Complex d = w0 * w0 - w2;
      if (is_pole(d, std::norm(w0) + w2)) {
        out.at_pole = true;
        out.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
        return out;
      }
      const Complex mu = 1.0 + wM * w0 / d;
      const Complex kappa = wM * omega / d;
      return oblique_permeability(mu, kappa, mode.theta_k, mode.coupling);
    }
  }
  return out;
}

RefractiveIndex refractive_index(const FerriteMaterial& mat, const BiasState& bias, double omega,
                                 const PropagationMode& mode) {
  const Permeability mu = polder_permeability(mat, bias, omega, mode);
  RefractiveIndex n;
  n.at_pole = mu.at_pole;
  if (mu.at_pole) {
    n.real = std::numeric_limits<double>::quiet_NaN();
    n.extinction = std::numeric_limits<double>::quiet_NaN();
    n.squared = mu.value;
    return n;
  }
  const Complex eps = mat.relative_permittivity();
  const Complex value = passive_sqrt(eps) * passive_sqrt(mu.value);
  n.squared = eps * mu.value;
  n.real = value.real();
  n.extinction = -value.imag();
  return n;
}

double langevin(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-3) {
    const double x2 = x * x;
    return x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0)));
  }
  if (ax > 40.0) return (x > 0 ? 1.0 : -1.0) - 1.0 / x;
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double hysteresis_magnetization(const HysteresisModel& model, double H) {
  model.validate();
  const double k = Constants::vacuum_permeability_mu0 * model.langevin_a;
  if (model.branch == Branch::Ascending) return model.Ms * langevin(k * (H - model.Hc));
  // -M_asc(-H) with L odd.
  return model.Ms * langevin(k * (H + model.Hc));
}

double fit_langevin_a(double Ms, double Mr, double Hc) {
  detail::require_positive(Ms, "Ms");
  detail::require_positive(Mr, "Mr");
  detail::require_positive(Hc, "Hc");
  if (Mr >= Ms) throw NumericalError("no Langevin fit: remanence must be below saturation");
  const double target = Mr / Ms;
  double lo = 0.0;
  double hi = 1.0;
  while (langevin(hi) < target) hi *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    x = 0.5 * (lo + hi);
    const double residual = langevin(x) - target;
    if (std::abs(residual) <= 1e-13 * target || hi - lo <= 1e-16 * hi) break;
    (residual < 0.0 ? lo : hi) = x;
  }
  return x / (Constants::vacuum_permeability_mu0 * Hc);
}

double chi2_magnetic(const FerriteMaterial& mat, double pump_omega_L) {
  detail::require_positive(pump_omega_L, "pump omega_L");
  detail::require_positive(mat.resonance_linewidth_dH, "dH");
  return gyromagnetic_ratio() * mat.static_magnetization_M0 /
         (pump_omega_L * mat.resonance_linewidth_dH);
}

double miller_delta(double chi2, double chi1_at_sum, double chi1_at_w1, double chi1_at_w2) {
  const double product = chi1_at_sum * chi1_at_w1 * chi1_at_w2;
  if (product == 0.0 || !std::isfinite(product))
    throw DomainError("first-order susceptibilities must be nonzero");
  return chi2 / product;
}

FerriteMaterial material_preset(const std::string& name) {
  FerriteMaterial m;
  m.name = name;
  m.eps_prime = 14.7;
  m.loss_tangent = 0.0002;
  m.damping_alpha = 0.00007;
  m.resonance_linewidth_dH = 28.0;
  if (name == "yig_pure") {
    m.saturation_magnetization_Ms = 238e3;
    m.static_magnetization_M0 = 238e3;
    return m;
  }
  if (name == "yig_ho_x1.5") {
    const double hc = 0.013 / Constants::vacuum_permeability_mu0;
    m.saturation_magnetization_Ms = 640e3;
    m.static_magnetization_M0 = 640e3;
    HysteresisModel h;
    h.Ms = 640e3;
    h.Hc = hc;
    h.remanence_Mr = 561.0;
    h.langevin_a = fit_langevin_a(h.Ms, h.remanence_Mr, hc);
    m.hysteresis = h;
    return m;
  }
  throw ConfigError("unknown material preset: " + name);
}

std::vector<std::string> material_preset_names() { return {"yig_pure", "yig_ho_x1.5"}; }

}  // namespace yigbell::ferrite
