// yigbell: command-line front end for the ferrite Bell-test simulator.
//
//   yigbell <dispersion|hysteresis|flux|linkbudget|phasematch|belltest|report|formats>
//           [--config PATH | --paper-defaults] [--seed N] [--out DIR] [--format csv|json]
//           [--threads N] [--lhv]
//
// Exit codes: 0 success, 1 validation, 2 numerical (non-convergence), 3 IO.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "yigbell/belltest.hpp"
#include "yigbell/csv.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/phasematch.hpp"
#include "yigbell/report.hpp"
#include "yigbell/scenario.hpp"

namespace {

using namespace yigbell;
using nlohmann::json;

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct Options {
  std::string config;
  bool paper_defaults = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<int> threads;
  bool lhv = false;
  // dispersion
  std::optional<double> f_min, f_max;
  std::optional<int> points;
  bool svg = false;
  bool trajectory = false;
};

/// Writes named outputs either into a directory or, without one, the primary
/// output to stdout.
class Sink {
 public:
  explicit Sink(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec) throw IoError("cannot create output directory " + dir_ + ": " + ec.message());
    }
  }

  bool to_directory() const { return !dir_.empty(); }

  void primary(const std::string& name, const std::string& content) {
    if (to_directory()) {
      file(name, content);
    } else {
      std::cout << content;
      if (!std::cout) throw IoError("cannot write to stdout");
    }
  }

  /// Secondary outputs are only produced with an output directory.
  void file(const std::string& name, const std::string& content) {
    if (!to_directory()) return;
    const std::filesystem::path p = std::filesystem::path(dir_) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot open " + p.string() + " for writing");
    os << content;
    os.close();
    if (!os) throw IoError("write failed: " + p.string());
    std::cerr << "wrote " << p.string() << '\n';
  }

 private:
  std::string dir_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

scenario::Scenario load(const Options& o) {
  scenario::Scenario s = o.config.empty() ? scenario::paper_defaults() : scenario::load_scenario(o.config);
  if (o.seed) s.seed = *o.seed;
  if (o.threads) s.threads = *o.threads;
  if (o.lhv) s.bell.source = belltest::SourceModel::LocalHiddenVariable;
  if (!o.out.empty()) s.output_dir = o.out;
  s.validate();
  return s;
}

std::string format_or(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json") throw ConfigError("--format must be csv or json");
  return f;
}

std::string table_text(const report::Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    t.write_csv(os);
  } else {
    os << dump(t.to_json());
  }
  return os.str();
}

std::string key_values_csv(const json& j, const std::string& prefix = {}) {
  std::ostringstream os;
  if (prefix.empty()) os << "key,value\n";
  for (const auto& item : j.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    if (item.value().is_object()) {
      const std::string nested = key_values_csv(item.value(), key);
      os << nested;
    } else if (item.value().is_number_float()) {
      os << key << ',' << format_number(item.value().get<double>()) << '\n';
    } else if (item.value().is_string()) {
      os << key << ",\"" << item.value().get<std::string>() << "\"\n";
    } else {
      os << key << ',' << item.value().dump() << '\n';
    }
  }
  return os.str();
}

int cmd_dispersion(const Options& o) {
  const scenario::Scenario s = load(o);
  const double f_min = o.f_min.value_or(s.dispersion.f_min_hz);
  const double f_max = o.f_max.value_or(s.dispersion.f_max_hz);
  const int n = o.points.value_or(s.dispersion.points);
  if (n < 2) throw ConfigError("--points must be >= 2");
  const report::Table t = report::dispersion_table(s, f_min, f_max, n);
  const std::string fmt = format_or(o, "csv");
  Sink sink(s.output_dir);
  sink.primary("dispersion." + fmt, table_text(t, fmt));
  if (o.svg) {
    std::ostringstream svg;
    report::write_svg_plot(svg, "Refractive index, strong and weak modes", "f [Hz]", t.column("f_hz"),
                           {{"strong n", t.column("strong_n")},
                            {"strong extinction", t.column("strong_extinction")},
                            {"weak n", t.column("weak_n")}});
    sink.file("dispersion.svg", svg.str());
  }
  return kOk;
}

int cmd_hysteresis(const Options& o) {
  const scenario::Scenario s = load(o);
  const report::Table t = report::hysteresis_table(s);
  const std::string fmt = format_or(o, "csv");
  Sink sink(s.output_dir);
  sink.primary("hysteresis." + fmt, table_text(t, fmt));
  if (o.svg) {
    std::ostringstream svg;
    report::write_svg_plot(svg, "Langevin hysteresis loop", "H [A/m]", t.column("H_A_per_m"),
                           {{"ascending", t.column("M_ascending")}, {"descending", t.column("M_descending")}});
    sink.file("hysteresis.svg", svg.str());
  }
  return kOk;
}

int cmd_flux(const Options& o) {
  const scenario::Scenario s = load(o);
  const json j = report::flux_json(report::compute_flux(s));
  const std::string fmt = format_or(o, "json");
  Sink sink(s.output_dir);
  sink.primary("flux." + fmt, fmt == "json" ? dump(j) : key_values_csv(j));
  return kOk;
}

int cmd_linkbudget(const Options& o) {
  const scenario::Scenario s = load(o);
  const json j = report::linkbudget_json(report::compute_linkbudget(s));
  const std::string fmt = format_or(o, "json");
  Sink sink(s.output_dir);
  sink.primary("linkbudget." + fmt, fmt == "json" ? dump(j) : key_values_csv(j));
  return kOk;
}

int cmd_phasematch(const Options& o) {
  const scenario::Scenario s = load(o);
  const phasematch::MatchProblem p = s.match_problem();
  const phasematch::MatchResult r = phasematch::optimize_phase_match(p);
  const json j = report::match_result_json(r, p);
  const std::string fmt = format_or(o, "json");
  Sink sink(s.output_dir);
  sink.primary("phasematch." + fmt, fmt == "json" ? dump(j) : key_values_csv(j));
  std::ostringstream land;
  phasematch::write_landscape_csv(land, r.landscape);
  sink.file("landscape.csv", land.str());
  if (!r.converged) {
    std::cerr << "phase-match search did not converge; best-so-far emitted\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_belltest(const Options& o) {
  const scenario::Scenario s = load(o);
  const belltest::BellRunConfig c = s.bell_config();
  const belltest::BellRunResult r = belltest::run_bell_test(c);
  json echo = scenario::to_json(s)["bell"];
  echo["seed"] = c.seed;
  echo["coherence_blocks"] = c.coherence_blocks;
  echo.erase("lhv_coherence_blocks");
  const std::string fmt = format_or(o, "json");
  Sink sink(s.output_dir);
  sink.primary("belltest." + fmt,
               fmt == "json" ? dump(report::bell_result_json(r, c, echo))
                             : table_text(report::bell_result_table(r), "csv"));
  if (o.trajectory) {
    belltest::BellRunConfig t = c;
    t.analyzer_a = belltest::Analyzer::at(c.angles.a);
    t.analyzer_b = belltest::Analyzer::at(c.angles.b);
    std::ostringstream os;
    report::write_trajectory_csv(os, belltest::simulate_run(t));
    sink.file("z_trajectory.csv", os.str());
  }
  return kOk;
}

int cmd_report(const Options& o) {
  const scenario::Scenario s = load(o);
  const report::PaperReport r = report::build_paper_report(s);
  const std::string fmt = format_or(o, "json");
  Sink sink(s.output_dir);
  std::ostringstream text;
  report::write_report_text(text, r);
  if (sink.to_directory()) {
    if (fmt == "json") {
      sink.file("report.json", dump(report::report_json(r)));
    } else {
      std::ostringstream csv;
      report::write_report_csv(csv, r);
      sink.file("report.csv", csv.str());
    }
    sink.file("report.txt", text.str());
  } else {
    std::cout << text.str();
  }
  return r.all_ok() ? kOk : kNumerical;
}

constexpr const char* kFormats = R"(Data files (UTF-8, floating point with 9 significant digits, "nan" for undefined)

dispersion.csv   f_hz, strong_n, strong_extinction, weak_n, weak_extinction,
                 strong_mu_re, strong_mu_im
                 refractive index n = real - j*extinction of each mode at the
                 scenario's propagation angle; strong_mu is the effective
                 permeability of the strong mode. Pole points are nan.
hysteresis.csv   H_A_per_m, M_ascending, M_descending   (A/m)
landscape.csv    theta_s, omega_s, delta_k, feasible
                 signal angle to the pump [rad], signal angular frequency
                 [rad/s], longitudinal mismatch [rad/m] (nan if infeasible), 0/1
z_trajectory.csv samples, re_Z, im_Z, abs_Z
                 running coherent integral at sub-run checkpoints, (a, b) setting
belltest.csv     a_rad, b_rad, N   (nan angle = analyzer removed)
flux/linkbudget/phasematch with --format csv: key,value with dotted keys
report.csv       quantity, computed, paper, status, criterion, note

JSON outputs carry the same quantities with unit-suffixed keys.

)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ferrite SPDC, link budget and homodyne Bell-test simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", o.config, "Scenario JSON file");
    auto* paper = sub->add_flag("--paper-defaults", o.paper_defaults, "Use the built-in paper scenario");
    cfg->excludes(paper);
    sub->add_option("--seed", o.seed, "RNG seed (overrides the scenario)");
    sub->add_option("--out", o.out, "Output directory (default: primary output to stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--lhv", o.lhv, "Use the local hidden-variable source");
  };

  auto* dispersion = app.add_subcommand("dispersion", "Strong/weak mode refractive index versus frequency");
  add_common(dispersion);
  dispersion->add_option("--f-min", o.f_min, "Lowest frequency [Hz]");
  dispersion->add_option("--f-max", o.f_max, "Highest frequency [Hz]");
  dispersion->add_option("--points", o.points, "Number of frequency points (>= 2)");
  dispersion->add_flag("--svg", o.svg, "Also write dispersion.svg (needs --out)");

  auto* hysteresis = app.add_subcommand("hysteresis", "Langevin hysteresis loop");
  add_common(hysteresis);
  hysteresis->add_flag("--svg", o.svg, "Also write hysteresis.svg (needs --out)");

  auto* flux = app.add_subcommand("flux", "Parametric gain, radiance, band power and photon rate");
  add_common(flux);
  auto* link = app.add_subcommand("linkbudget", "Receiver noise, SNR chain and integration time");
  add_common(link);
  auto* match = app.add_subcommand("phasematch", "Phase-matching search over signal angle and frequency");
  add_common(match);
  auto* bell = app.add_subcommand("belltest", "Monte Carlo homodyne Bell test");
  add_common(bell);
  bell->add_flag("--trajectory", o.trajectory, "Also write z_trajectory.csv (needs --out)");
  auto* rep = app.add_subcommand("report", "Compare every computed value with the printed one");
  add_common(rep);
  auto* formats = app.add_subcommand("formats", "Describe output columns and the scenario schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*formats) {
      std::cout << kFormats << scenario::schema_text();
      return kOk;
    }
    if (*dispersion) return cmd_dispersion(o);
    if (*hysteresis) return cmd_hysteresis(o);
    if (*flux) return cmd_flux(o);
    if (*link) return cmd_linkbudget(o);
    if (*match) return cmd_phasematch(o);
    if (*bell) return cmd_belltest(o);
    if (*rep) return cmd_report(o);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    std::cerr << "invalid value: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
