#include <doctest.h>

#include <cmath>
#include <complex>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/ferrite.hpp"

using namespace yigbell;
using namespace yigbell::ferrite;
using cd = std::complex<double>;

namespace {

FerriteMaterial fig4_material(double alpha = 7e-5, double tan_delta = 2e-4) {
  FerriteMaterial m = material_preset("yig_pure");
  m.damping_alpha = alpha;
  m.loss_tangent = tan_delta;
  return m;
}

const BiasState kFig4 = BiasState::from_frequencies(15e9, 6.9e9);

// Unreduced Polder tensor elements.
void polder_oracle(const FerriteMaterial& m, const BiasState& b, double w, cd& mu, cd& kappa) {
  const cd w0 = b.larmor_omega0 + cd(0, 1) * m.damping_alpha * w;
  const cd d = w0 * w0 - w * w;
  mu = 1.0 + b.magnetization_omegaM * w0 / d;
  kappa = b.magnetization_omegaM * w / d;
}

// Textbook oblique-propagation roots, mu_z = 1.
cd oblique_oracle(cd mu, cd kappa, double th, bool plus) {
  const double s2 = std::sin(th) * std::sin(th), c2 = std::cos(th) * std::cos(th);
  const cd a = (mu * mu - kappa * kappa - mu) * s2;
  const cd r = std::sqrt(a * a + 4.0 * kappa * kappa * c2);
  return (a + 2.0 * mu + (plus ? r : -r)) / (2.0 * ((mu - 1.0) * s2 + 1.0));
}

}  // namespace

TEST_CASE("gyromagnetic ratio from constants") {
  const double g = 2.00231930436256 * 1.25663706212e-6 * 1.602176634e-19 / (2 * 9.1093837015e-31);
  CHECK(gyromagnetic_ratio() == doctest::Approx(g).epsilon(1e-14));
  CHECK(gyromagnetic_ratio() == doctest::Approx(2.2128e5).epsilon(1e-4));
}

TEST_CASE("Larmor frequency") {
  CHECK(larmor_frequency(4.259e5) == doctest::Approx(9.425e10).epsilon(1e-3));
  CHECK(larmor_frequency(4.259e5) / (2 * kPi) == doctest::Approx(15e9).epsilon(1e-3));
  CHECK(larmor_frequency(0.0) == 0.0);
  CHECK(larmor_frequency(2 * 1234.5) == doctest::Approx(2 * larmor_frequency(1234.5)).epsilon(1e-15));
  CHECK_THROWS_AS(larmor_frequency(-1.0), DomainError);
}

TEST_CASE("bias state consistency") {
  const BiasState b = BiasState::from_fields(4e5, 2e5);
  CHECK(std::abs(b.larmor_omega0 - gyromagnetic_ratio() * 4e5) <= 1e-9 * b.larmor_omega0);
  CHECK(std::abs(b.magnetization_omegaM - gyromagnetic_ratio() * 2e5) <= 1e-9 * b.magnetization_omegaM);
  CHECK(kFig4.larmor_omega0 == doctest::Approx(2 * kPi * 15e9).epsilon(1e-15));
  CHECK(larmor_frequency(kFig4.applied_field_H0) == doctest::Approx(kFig4.larmor_omega0).epsilon(1e-12));
}

TEST_CASE("material validation") {
  FerriteMaterial m = material_preset("yig_pure");
  CHECK_NOTHROW(m.validate());
  m.eps_prime = 1.0;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = material_preset("yig_pure");
  m.static_magnetization_M0 = 2 * m.saturation_magnetization_Ms;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = material_preset("yig_pure");
  m.damping_alpha = 1.5;
  CHECK_THROWS_AS(m.validate(), DomainError);
  CHECK_THROWS_AS(material_preset("unobtainium"), ConfigError);
  for (const auto& name : material_preset_names()) CHECK_NOTHROW(material_preset(name).validate());
}

TEST_CASE("transverse strong mode matches the unreduced Polder form") {
  const FerriteMaterial m = fig4_material();
  for (double f = 5e9; f < 40e9; f += 0.37e9) {
    const double w = 2 * kPi * f;
    cd mu, kappa;
    polder_oracle(m, kFig4, w, mu, kappa);
    const cd want = (mu * mu - kappa * kappa) / mu;
    const Permeability got = polder_permeability(m, kFig4, w, PropagationMode::transverse(Coupling::Strong));
    CHECK(!got.at_pole);
    CHECK(std::abs(got.value - want) <= 1e-9 * std::abs(want));
  }
}

TEST_CASE("longitudinal modes are mu +- kappa") {
  const FerriteMaterial m = fig4_material();
  for (double f : {3e9, 11e9, 19e9, 33e9}) {
    const double w = 2 * kPi * f;
    cd mu, kappa;
    polder_oracle(m, kFig4, w, mu, kappa);
    const cd strong = polder_permeability(m, kFig4, w, PropagationMode::longitudinal(Coupling::Strong)).value;
    const cd weak = polder_permeability(m, kFig4, w, PropagationMode::longitudinal(Coupling::Weak)).value;
    CHECK(std::abs(strong - (mu + kappa)) <= 1e-9 * std::abs(mu + kappa));
    CHECK(std::abs(weak - (mu - kappa)) <= 1e-9 * std::abs(mu - kappa));
  }
}

TEST_CASE("transverse weak mode is exactly unity") {
  const FerriteMaterial m = fig4_material();
  for (double f : {1e9, 18.12e9, 21.9e9, 60e9}) {
    const Permeability p = polder_permeability(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Weak));
    CHECK(p.value == cd(1.0, 0.0));
    const RefractiveIndex n = refractive_index(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Weak));
    const cd root = std::sqrt(m.relative_permittivity());
    CHECK(n.real == doctest::Approx(root.real()).epsilon(1e-14));
    CHECK(n.extinction == doctest::Approx(-root.imag()).epsilon(1e-12));
  }
  const FerriteMaterial lossless = fig4_material(7e-5, 0.0);
  const RefractiveIndex n = refractive_index(lossless, kFig4, 2 * kPi * 7e9, PropagationMode::transverse(Coupling::Weak));
  CHECK(std::abs(n.real - std::sqrt(14.7)) < 1e-12);
}

TEST_CASE("strong-mode resonance at sqrt(f0 (f0 + fM))") {
  const FerriteMaterial m = fig4_material();
  const double f_res = std::sqrt(15e9 * 21.9e9);
  CHECK(f_res == doctest::Approx(18.12e9).epsilon(1e-3));
  double best_f = 0, best = 0;
  for (double f = 17e9; f < 19e9; f += 1e5) {
    const double a = std::abs(polder_permeability(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Strong)).value);
    if (a > best) {
      best = a;
      best_f = f;
    }
  }
  CHECK(std::abs(best_f - f_res) < 2e6);
}

TEST_CASE("lossless strong mode crosses zero at f0 + fM") {
  const FerriteMaterial m = fig4_material(0.0, 0.0);
  const auto mu_at = [&](double f) {
    return polder_permeability(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Strong)).value;
  };
  CHECK(mu_at(21.8e9).real() < 0.0);
  CHECK(mu_at(22.0e9).real() > 0.0);
  CHECK(std::abs(mu_at(21.9e9)) < 1e-12);
  // Lossless reality off the poles.
  for (double f = 5e9; f < 40e9; f += 0.5e9) {
    CHECK(mu_at(f).imag() == 0.0);
    const RefractiveIndex n = refractive_index(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Strong));
    CHECK(n.squared.imag() == 0.0);
  }
}

TEST_CASE("exact pole is flagged") {
  const FerriteMaterial m = fig4_material(0.0, 0.0);
  const double f_res = std::sqrt(15e9 * 21.9e9);
  const Permeability p = polder_permeability(m, kFig4, 2 * kPi * f_res, PropagationMode::transverse(Coupling::Strong));
  CHECK(p.at_pole);
  const RefractiveIndex n = refractive_index(m, kFig4, 2 * kPi * f_res, PropagationMode::transverse(Coupling::Strong));
  CHECK(n.at_pole);
  CHECK(!n.propagating());
  const Permeability l = polder_permeability(m, kFig4, kFig4.larmor_omega0, PropagationMode::longitudinal(Coupling::Strong));
  CHECK(l.at_pole);
}

TEST_CASE("refractive index far above cutoff approaches sqrt(eps)") {
  const FerriteMaterial m = fig4_material();
  const auto n_at = [&](double f) {
    return refractive_index(m, kFig4, 2 * kPi * f, PropagationMode::transverse(Coupling::Strong)).real;
  };
  // At 60 GHz mu_eff is still 0.954, so n sits 0.09 below the limit.
  const double mu60 = (21.9 * 21.9 - 3600.0) / (15.0 * 21.9 - 3600.0);
  CHECK(n_at(60e9) == doctest::Approx(std::sqrt(14.7 * mu60)).epsilon(1e-4));
  CHECK(std::abs(n_at(150e9) - std::sqrt(14.7)) < 0.05);
  CHECK(std::abs(n_at(3e12) - std::sqrt(14.7)) < 1e-3);
  double prev = 0.0;
  for (double f = 30e9; f < 1e12; f *= 1.5) {
    CHECK(n_at(f) > prev);
    prev = n_at(f);
  }
}

TEST_CASE("stopband is non-propagating") {
  const FerriteMaterial m = fig4_material();
  const RefractiveIndex n = refractive_index(m, kFig4, 2 * kPi * 19e9, PropagationMode::transverse(Coupling::Strong));
  CHECK(n.extinction > n.real);
  CHECK(!n.propagating());
}

TEST_CASE("passivity: extinction positive with losses") {
  const FerriteMaterial m = fig4_material();
  for (double f = 1e9; f < 50e9; f += 0.25e9) {
    for (auto mode : {PropagationMode::transverse(Coupling::Strong), PropagationMode::longitudinal(Coupling::Strong),
                      PropagationMode::longitudinal(Coupling::Weak), PropagationMode::oblique(0.7, Coupling::Strong),
                      PropagationMode::oblique(0.7, Coupling::Weak)}) {
      const RefractiveIndex n = refractive_index(m, kFig4, 2 * kPi * f, mode);
      CHECK(n.extinction > 0.0);
      const cd nc(n.real, -n.extinction);
      CHECK(std::abs(nc * nc - n.squared) <= 1e-9 * std::abs(n.squared));
    }
  }
}

TEST_CASE("oblique roots match the textbook formula") {
  const FerriteMaterial m = fig4_material();
  for (double f : {8e9, 12e9, 25e9, 35e9}) {
    const double w = 2 * kPi * f;
    cd mu, kappa;
    polder_oracle(m, kFig4, w, mu, kappa);
    for (double th : {0.2, 0.6, 1.0, 1.4}) {
      const cd a = oblique_oracle(mu, kappa, th, true), b = oblique_oracle(mu, kappa, th, false);
      const cd s = polder_permeability(m, kFig4, w, PropagationMode::oblique(th, Coupling::Strong)).value;
      const cd wk = polder_permeability(m, kFig4, w, PropagationMode::oblique(th, Coupling::Weak)).value;
      // The pair of roots is the same set.
      const bool same = std::abs(s - a) <= 1e-9 * std::abs(a) && std::abs(wk - b) <= 1e-9 * std::abs(b);
      const bool swapped = std::abs(s - b) <= 1e-9 * std::abs(b) && std::abs(wk - a) <= 1e-9 * std::abs(a);
      CHECK((same || swapped));
    }
  }
}

TEST_CASE("oblique geometry is continuous into the principal geometries") {
  const FerriteMaterial m = fig4_material();
  for (double f : {6e9, 10e9, 14e9, 25e9, 40e9}) {
    const double w = 2 * kPi * f;
    for (Coupling c : {Coupling::Strong, Coupling::Weak}) {
      const cd near0 = polder_permeability(m, kFig4, w, PropagationMode::oblique(1e-4, c)).value;
      const cd lon = polder_permeability(m, kFig4, w, PropagationMode::longitudinal(c)).value;
      CHECK(std::abs(near0 - lon) <= 1e-6 * std::abs(lon));
      const cd near90 = polder_permeability(m, kFig4, w, PropagationMode::oblique(kPi / 2 - 1e-4, c)).value;
      const cd tr = polder_permeability(m, kFig4, w, PropagationMode::transverse(c)).value;
      CHECK(std::abs(near90 - tr) <= 1e-6 * std::abs(tr));
    }
  }
  CHECK_THROWS_AS(polder_permeability(m, kFig4, 1e10, PropagationMode::oblique(0.0, Coupling::Strong)), DomainError);
  CHECK(PropagationMode::at_angle(0.0, Coupling::Weak).geometry == Geometry::Longitudinal);
  CHECK(PropagationMode::at_angle(kPi / 2, Coupling::Weak).geometry == Geometry::Transverse);
  CHECK(PropagationMode::at_angle(kPi - 0.3, Coupling::Weak).theta_k == doctest::Approx(0.3));
}

TEST_CASE("strong mode departs from unity more than weak below resonance") {
  const FerriteMaterial m = fig4_material();
  for (double f = 2e9; f < 17e9; f += 1e9) {
    const double w = 2 * kPi * f;
    const cd s = polder_permeability(m, kFig4, w, PropagationMode::transverse(Coupling::Strong)).value;
    const cd wk = polder_permeability(m, kFig4, w, PropagationMode::transverse(Coupling::Weak)).value;
    CHECK(std::abs(s - 1.0) > std::abs(wk - 1.0));
  }
}

TEST_CASE("Langevin function") {
  CHECK(langevin(0.0) == 0.0);
  for (double x : {1e-6, 1e-3, 0.01, 0.5, 2.0, 10.0, 50.0}) {
    const long double xl = x;
    const long double want = 1.0L / std::tanh(xl) - 1.0L / xl;
    CHECK(langevin(x) == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    CHECK(langevin(-x) == -langevin(x));
  }
}

TEST_CASE("hysteresis loop") {
  const HysteresisModel base = *material_preset("yig_ho_x1.5").hysteresis;
  HysteresisModel up = base, down = base;
  up.branch = Branch::Ascending;
  down.branch = Branch::Descending;
  CHECK(hysteresis_magnetization(up, 1e12) == doctest::Approx(6.40e5).epsilon(1e-3));
  CHECK(hysteresis_magnetization(up, base.Hc) == 0.0);
  CHECK(hysteresis_magnetization(down, 0.0) == doctest::Approx(561.0).epsilon(1e-9));
  for (double h = -5e4; h <= 5e4; h += 1234.5) CHECK(hysteresis_magnetization(down, h) == -hysteresis_magnetization(up, -h));
  HysteresisModel bad = base;
  bad.remanence_Mr = bad.Ms;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("Langevin fit") {
  const double hc = 0.013 / Constants::vacuum_permeability_mu0;
  const double a = fit_langevin_a(640e3, 561.0, hc);
  CHECK(std::abs(a - 0.2024) < 1e-3);
  // Small-x seed: L(x) ~ x/3.
  CHECK(a == doctest::Approx(3 * 561.0 / 640e3 / 0.013).epsilon(1e-3));
  CHECK(std::abs(640e3 * langevin(Constants::vacuum_permeability_mu0 * a * hc) - 561.0) / 561.0 < 1e-10);
  // Constructed fixed point: mu0 a Hc = 1 for a = 1.
  const double hc1 = 1.0 / Constants::vacuum_permeability_mu0;
  CHECK(fit_langevin_a(1e5, 1e5 * langevin(1.0), hc1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit_langevin_a(1e5, 1e-6, hc) < 1e-6);
  CHECK_THROWS_AS(fit_langevin_a(1e5, 1e5, hc), NumericalError);
}

TEST_CASE("second-order magnetic susceptibility") {
  FerriteMaterial m = material_preset("yig_pure");
  const double chi = chi2_magnetic(m, 2 * kPi * 20e9);
  CHECK(chi == doctest::Approx(gyromagnetic_ratio() * 238e3 / (2 * kPi * 20e9 * 28.0)).epsilon(1e-14));
  CHECK(chi == doctest::Approx(0.01495).epsilon(1e-3));
  CHECK(std::abs(chi - 0.015) / 0.015 < 0.05);
  m.static_magnetization_M0 = 119e3;
  CHECK(chi2_magnetic(m, 2 * kPi * 20e9) == doctest::Approx(chi / 2).epsilon(1e-14));
  m.static_magnetization_M0 = 238e3;
  m.resonance_linewidth_dH = 14.0;
  CHECK(chi2_magnetic(m, 2 * kPi * 20e9) == doctest::Approx(2 * chi).epsilon(1e-14));
  m.resonance_linewidth_dH = 0.0;
  CHECK_THROWS_AS(chi2_magnetic(m, 1e10), DomainError);
}

TEST_CASE("Miller coefficient") {
  CHECK(miller_delta(0.3, 1, 1, 1) == 0.3);
  CHECK(miller_delta(0.3, 2, 2, 2) == doctest::Approx(0.3 / 8));
  // Equal first-order susceptibilities transfer chi2 unchanged.
  const double delta = miller_delta(0.015, 3.0, 2.0, 2.0);
  CHECK(delta * 3.0 * 2.0 * 2.0 == doctest::Approx(0.015));
  CHECK_THROWS_AS(miller_delta(1.0, 0.0, 1.0, 1.0), DomainError);
}
