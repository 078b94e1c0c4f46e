#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "yigbell/constants.hpp"
#include "yigbell/csv.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/report.hpp"
#include "yigbell/scenario.hpp"

using namespace yigbell;
using namespace yigbell::scenario;
using nlohmann::json;

TEST_CASE("defaults round-trip through JSON") {
  const json a = to_json(paper_defaults());
  const json b = to_json(from_json(a));
  CHECK(a == b);
  CHECK(a.dump() == b.dump());
  CHECK(from_json(json::object()).seed == 1);
}

TEST_CASE("edited scenario round-trips") {
  Scenario s = paper_defaults();
  s.name = "edited";
  s.seed = 77;
  s.bias.applied_field_H0 = 3e5;
  s.spdc.chi2_magnetic = 0.02;
  s.spdc.gamma_M_override.reset();
  s.phasematch.pump_coupling = ferrite::Coupling::Strong;
  s.phasematch.interaction = spdc::Interaction::TypeII;
  s.phasematch.pump_direction = Eigen::Vector3d(1, 0, 1);
  s.linkbudget.budget.linear_noise_factor = 1.78;
  s.bell.state = belltest::BellState::psi(0.3);
  s.bell.source = belltest::SourceModel::IndependentHiddenVariable;
  s.bell.analyzer_a = belltest::Analyzer::removed();
  s.bell.channel_model = belltest::ChannelModel::SingleChannel;
  s.bell.angles.b = 0.123456789012345678;
  s.material.material.hysteresis.reset();
  const json j = to_json(s);
  const Scenario back = from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.bell.angles.b == s.bell.angles.b);
  CHECK(back.bell.analyzer_a.is_removed());
  CHECK(*back.bias.applied_field_H0 == 3e5);
  CHECK(!back.spdc.gamma_M_override);
  CHECK(back.phasematch.interaction == spdc::Interaction::TypeII);
  CHECK(!back.material.material.hysteresis);
}

TEST_CASE("missing keys keep defaults") {
  const Scenario s = from_json(json{{"pump", {{"power_W", 5.0}}}, {"bell", {{"pair_rate", 5e4}}}});
  CHECK(s.pump.power_W == 5.0);
  CHECK(s.pump.area_m2 == 1e-4);
  CHECK(s.bell.pair_rate == 5e4);
  CHECK(s.bell.sample_rate == 2e5);
  CHECK(s.pump.intensity() == doctest::Approx(5e4));
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS(from_json(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"pump", {{"powr_W", 1}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"bell", {{"state", {{"kind", "omega"}}}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"bell", {{"source", "oracle"}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"phasematch", {{"pump_direction", {1, 0}}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"phasematch", {{"interaction", "type3"}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"pump", {{"power_W", "one"}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"dispersion", {{"points", 1}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"threads", 0}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"material", {{"preset", "unobtainium"}}}}), ConfigError);
  CHECK_THROWS(from_json(json{{"pump", {{"area_m2", 0.0}}}}));
  CHECK_THROWS(from_json(json{{"bell", {{"pair_rate", 1e9}}}}));
  CHECK_THROWS_AS(from_json(json::array()), ConfigError);
}

TEST_CASE("material presets and inline materials") {
  const Scenario ho = from_json(json{{"material", {{"preset", "yig_ho_x1.5"}}}});
  CHECK(ho.material.material.hysteresis.has_value());
  const Scenario tweaked = from_json(json{{"material", {{"preset", "yig_pure"}, {"eps_prime", 15.0}}}});
  CHECK(tweaked.material.material.eps_prime == 15.0);
  CHECK(tweaked.material.material.damping_alpha == ferrite::material_preset("yig_pure").damping_alpha);
  const json inline_mat{{"preset", ""},
                        {"name", "garnet"},
                        {"eps_prime", 12.0},
                        {"loss_tangent", 1e-4},
                        {"damping_alpha", 1e-4},
                        {"saturation_magnetization_Ms", 1.4e5},
                        {"static_magnetization_M0", 1.4e5},
                        {"resonance_linewidth_dH", 40.0},
                        {"hysteresis", nullptr}};
  const Scenario s = from_json(json{{"material", inline_mat}});
  CHECK(s.material.material.name == "garnet");
  CHECK(s.material.material.eps_prime == 12.0);
  // An inline material missing its constants fails validation.
  CHECK_THROWS(from_json(json{{"material", {{"preset", ""}}}}));
}

TEST_CASE("bias from the applied field") {
  Scenario s = paper_defaults();
  s.bias.applied_field_H0 = 4.259e5;
  const ferrite::BiasState b = s.bias.resolve(s.material.material);
  CHECK(b.larmor_omega0 / kTwoPi == doctest::Approx(15e9).epsilon(1e-3));
  CHECK(b.magnetization_omegaM == doctest::Approx(ferrite::gyromagnetic_ratio() * s.material.material.static_magnetization_M0));
  s.bias.applied_field_H0.reset();
  CHECK(s.bias.resolve(s.material.material).magnetization_omegaM == doctest::Approx(kTwoPi * 6.9e9));
}

TEST_CASE("bell configuration from a scenario") {
  Scenario s = paper_defaults();
  s.seed = 9;
  s.threads = 4;
  CHECK(s.bell_config().seed == 9);
  CHECK(s.bell_config().threads == 4);
  CHECK(s.bell_config().coherence_blocks == 1);
  s.bell.source = belltest::SourceModel::LocalHiddenVariable;
  CHECK(s.bell_config().coherence_blocks == s.lhv_coherence_blocks);
}

TEST_CASE("scenario files") {
  const std::string path = "scenario_test_tmp.json";
  {
    std::ofstream os(path);
    os << json{{"name", "file"}, {"seed", 3}}.dump();
  }
  const Scenario s = load_scenario(path);
  CHECK(s.name == "file");
  CHECK(s.seed == 3);
  {
    std::ofstream os(path);
    os << "{ not json";
  }
  CHECK_THROWS_AS(load_scenario(path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/none.json"), IoError);
  CHECK(schema_text().find("pair_rate") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(3.56e-12) == "3.56e-12");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  std::ostringstream os;
  write_csv_header(os, {"a", "b"});
  write_csv_row(os, {1.0, 2.5});
  CHECK(os.str() == "a,b\n1,2.5\n");
}

TEST_CASE("dispersion table") {
  const Scenario s = paper_defaults();
  const report::Table t = report::dispersion_table(s, 5e9, 40e9, 36);
  CHECK(t.rows.size() == 36);
  CHECK(t.columns.front() == "f_hz");
  const auto weak = t.column("weak_n");
  for (double n : weak) CHECK(std::abs(n - std::sqrt(14.7)) < 1e-3);
  CHECK(t.rows.front().front() == 5e9);
  CHECK(t.rows.back().front() == 40e9);
  CHECK_THROWS(t.column("nope"));
}

TEST_CASE("hysteresis table") {
  const report::Table t = report::hysteresis_table(paper_defaults());
  CHECK(t.rows.size() == 401);
  const auto up = t.column("M_ascending"), down = t.column("M_descending");
  for (std::size_t i = 0; i < up.size(); ++i) CHECK(down[i] == doctest::Approx(-up[up.size() - 1 - i]));
}

TEST_CASE("flux chain") {
  Scenario s = paper_defaults();
  const report::FluxResult f = report::compute_flux(s);
  CHECK(f.gamma_M_used == 630.0);
  CHECK(f.gamma_M_literal > 630.0 / 2.5);
  CHECK(f.radiance == doctest::Approx(1.80e-19).epsilon(0.03));
  CHECK(f.band_power == doctest::Approx(3.56e-12).epsilon(0.03));
  CHECK(f.photon_rate == doctest::Approx(0.5e12).epsilon(0.1));
  CHECK(f.gamma_E == doctest::Approx(1.2e-5).epsilon(0.05));
  CHECK(f.radiance_matched_dielectric == doctest::Approx(f.matched_identity).epsilon(1e-12));
  s.spdc.gamma_M_override.reset();
  const report::FluxResult lit = report::compute_flux(s);
  CHECK(lit.gamma_M_used == lit.gamma_M_literal);
  s.spdc.chi2_magnetic = 0.0;
  s.spdc.gamma_M_override = 630.0;
  const report::FluxResult zero = report::compute_flux(s);
  CHECK(zero.gamma_M_used == 0.0);
  CHECK(zero.band_power == 0.0);
  const json j = report::flux_json(f);
  CHECK(j.contains("magnetic"));
  CHECK(j.contains("dielectric"));
}

TEST_CASE("link budget report") {
  const report::LinkBudgetReport r = report::compute_linkbudget(paper_defaults());
  CHECK(r.noise_power == doctest::Approx(71e-12).epsilon(0.02));
  CHECK(r.time.general == doctest::Approx(8.6).epsilon(0.05));
  CHECK(r.snr_out_at_time == doctest::Approx(1.0).epsilon(1e-9));
  Scenario s = paper_defaults();
  s.linkbudget.derive_nbar = true;
  CHECK(report::compute_linkbudget(s).budget.nbar == doctest::Approx(604).epsilon(2e-3));
}

TEST_CASE("paper report grades every landmark") {
  const report::PaperReport r = report::build_paper_report(paper_defaults());
  CHECK(r.all_ok());
  int flags = 0;
  for (const auto& row : r.rows) {
    CHECK(row.status != report::Status::Fail);
    if (row.status == report::Status::Flag) ++flags;
  }
  CHECK(flags >= 2);
  bool eq18 = false, eq19 = false;
  for (const auto& row : r.rows) {
    if (row.quantity.rfind("matched dielectric radiance", 0) == 0) eq18 = row.status == report::Status::Flag;
    if (row.quantity.rfind("magnetic field gain gamma_M", 0) == 0) eq19 = row.status == report::Status::Flag;
  }
  CHECK(eq18);
  CHECK(eq19);
  std::ostringstream txt, csv;
  report::write_report_text(txt, r);
  report::write_report_csv(csv, r);
  CHECK(txt.str().find("FLAG") != std::string::npos);
  CHECK(csv.str().find("quantity") != std::string::npos);
  CHECK(report::report_json(r).size() > 0);
}
