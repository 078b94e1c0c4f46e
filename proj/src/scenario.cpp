#include "yigbell/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"

namespace yigbell::scenario {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError(std::string("unknown key '") + item.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad type for '") + key + "'");
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
    return;
  }
  T v{};
  read(j, key, v);
  out = v;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string coupling_name(ferrite::Coupling c) { return c == ferrite::Coupling::Strong ? "strong" : "weak"; }

ferrite::Coupling parse_coupling(const std::string& s) {
  if (s == "strong") return ferrite::Coupling::Strong;
  if (s == "weak") return ferrite::Coupling::Weak;
  throw ConfigError("coupling must be 'strong' or 'weak', got '" + s + "'");
}

std::string interaction_name(spdc::Interaction i) { return i == spdc::Interaction::TypeI ? "type1" : "type2"; }

spdc::Interaction parse_interaction(const std::string& s) {
  if (s == "type1") return spdc::Interaction::TypeI;
  if (s == "type2") return spdc::Interaction::TypeII;
  throw ConfigError("interaction must be 'type1' or 'type2', got '" + s + "'");
}

std::string state_name(belltest::StateKind k) {
  switch (k) {
    case belltest::StateKind::PhiTypeI: return "phi";
    case belltest::StateKind::PsiTypeII: return "psi";
    case belltest::StateKind::SagnacTypeII: return "sagnac";
  }
  return "phi";
}

belltest::StateKind parse_state(const std::string& s) {
  if (s == "phi") return belltest::StateKind::PhiTypeI;
  if (s == "psi") return belltest::StateKind::PsiTypeII;
  if (s == "sagnac") return belltest::StateKind::SagnacTypeII;
  throw ConfigError("state kind must be phi, psi or sagnac, got '" + s + "'");
}

std::string source_name(belltest::SourceModel m) {
  switch (m) {
    case belltest::SourceModel::Quantum: return "quantum";
    case belltest::SourceModel::LocalHiddenVariable: return "lhv";
    case belltest::SourceModel::IndependentHiddenVariable: return "independent";
  }
  return "quantum";
}

belltest::SourceModel parse_source(const std::string& s) {
  if (s == "quantum") return belltest::SourceModel::Quantum;
  if (s == "lhv") return belltest::SourceModel::LocalHiddenVariable;
  if (s == "independent") return belltest::SourceModel::IndependentHiddenVariable;
  throw ConfigError("source must be quantum, lhv or independent, got '" + s + "'");
}

std::string channel_name(belltest::ChannelModel c) {
  return c == belltest::ChannelModel::TwinChannel ? "twin" : "single";
}

belltest::ChannelModel parse_channel(const std::string& s) {
  if (s == "twin") return belltest::ChannelModel::TwinChannel;
  if (s == "single") return belltest::ChannelModel::SingleChannel;
  throw ConfigError("channel_model must be 'twin' or 'single', got '" + s + "'");
}

json analyzer_json(const belltest::Analyzer& a) { return a.is_removed() ? json(nullptr) : json(*a.angle); }

void read_analyzer(const json& j, const char* key, belltest::Analyzer& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out = belltest::Analyzer::removed();
    return;
  }
  double v = 0.0;
  read(j, key, v);
  out = belltest::Analyzer::at(v);
}

json material_json(const MaterialSpec& m) {
  const ferrite::FerriteMaterial& f = m.material;
  json j{{"preset", m.preset},
         {"name", f.name},
         {"eps_prime", f.eps_prime},
         {"loss_tangent", f.loss_tangent},
         {"damping_alpha", f.damping_alpha},
         {"saturation_magnetization_Ms", f.saturation_magnetization_Ms},
         {"static_magnetization_M0", f.static_magnetization_M0},
         {"resonance_linewidth_dH", f.resonance_linewidth_dH}};
  if (f.hysteresis) {
    const auto& h = *f.hysteresis;
    j["hysteresis"] = {{"Ms", h.Ms},
                       {"Hc", h.Hc},
                       {"remanence_Mr", h.remanence_Mr},
                       {"langevin_a", h.langevin_a},
                       {"branch", h.branch == ferrite::Branch::Ascending ? "ascending" : "descending"}};
  } else {
    j["hysteresis"] = nullptr;
  }
  return j;
}

MaterialSpec parse_material(const json& j) {
  check_keys(j, "material",
             {"preset", "name", "eps_prime", "loss_tangent", "damping_alpha", "saturation_magnetization_Ms",
              "static_magnetization_M0", "resonance_linewidth_dH", "hysteresis"});
  MaterialSpec m;
  read(j, "preset", m.preset);
  if (m.preset.empty()) {
    m.material = ferrite::FerriteMaterial{};
    m.material.name = "inline";
  } else {
    m.material = ferrite::material_preset(m.preset);
  }
  ferrite::FerriteMaterial& f = m.material;
  read(j, "name", f.name);
  read(j, "eps_prime", f.eps_prime);
  read(j, "loss_tangent", f.loss_tangent);
  read(j, "damping_alpha", f.damping_alpha);
  read(j, "saturation_magnetization_Ms", f.saturation_magnetization_Ms);
  read(j, "static_magnetization_M0", f.static_magnetization_M0);
  read(j, "resonance_linewidth_dH", f.resonance_linewidth_dH);
  if (j.contains("hysteresis")) {
    const json& h = j.at("hysteresis");
    if (h.is_null()) {
      f.hysteresis.reset();
    } else {
      check_keys(h, "material.hysteresis", {"Ms", "Hc", "remanence_Mr", "langevin_a", "branch"});
      ferrite::HysteresisModel model = f.hysteresis.value_or(ferrite::HysteresisModel{});
      read(h, "Ms", model.Ms);
      read(h, "Hc", model.Hc);
      read(h, "remanence_Mr", model.remanence_Mr);
      read(h, "langevin_a", model.langevin_a);
      std::string branch = model.branch == ferrite::Branch::Ascending ? "ascending" : "descending";
      read(h, "branch", branch);
      if (branch == "ascending") {
        model.branch = ferrite::Branch::Ascending;
      } else if (branch == "descending") {
        model.branch = ferrite::Branch::Descending;
      } else {
        throw ConfigError("hysteresis branch must be ascending or descending");
      }
      f.hysteresis = model;
    }
  }
  return m;
}

}  // namespace

ferrite::BiasState BiasSpec::resolve(const ferrite::FerriteMaterial& mat) const {
  if (applied_field_H0) return ferrite::BiasState::from_fields(*applied_field_H0, mat.static_magnetization_M0);
  return ferrite::BiasState::from_frequencies(f0_hz, fM_hz);
}

void Scenario::validate() const {
  material.material.validate();
  if (material.material.hysteresis) material.material.hysteresis->validate();
  bias.resolve(material.material);
  detail::require_nonnegative(pump.power_W, "pump power");
  detail::require_positive(pump.area_m2, "pump area");
  detail::require_positive(pump.frequency_hz, "pump frequency");
  detail::require_nonnegative(pump.alternate_power_W, "alternate pump power");
  if (!(dispersion.f_min_hz > 0.0) || !(dispersion.f_max_hz > dispersion.f_min_hz))
    throw ConfigError("dispersion range must satisfy 0 < f_min < f_max");
  if (dispersion.points < 2) throw ConfigError("dispersion needs at least 2 points");
  if (!(hysteresis.h_max > hysteresis.h_min)) throw ConfigError("hysteresis range must satisfy h_min < h_max");
  if (hysteresis.points < 2) throw ConfigError("hysteresis needs at least 2 points");
  detail::require_positive(spdc.signal_frequency_hz, "signal frequency");
  detail::require_positive(spdc.idler_frequency_hz, "idler frequency");
  detail::require_nonnegative(spdc.chi2_electric, "chi2_electric");
  if (spdc.chi2_magnetic) detail::require_nonnegative(*spdc.chi2_magnetic, "chi2_magnetic");
  if (spdc.gamma_M_override) detail::require_nonnegative(*spdc.gamma_M_override, "gamma_M_override");
  detail::require_positive(spdc.n_dielectric, "n_dielectric");
  detail::require_positive(spdc.n_magnetic, "n_magnetic");
  detail::require_positive(spdc.dielectric_length, "dielectric_length");
  detail::require_positive(spdc.magnetic_length, "magnetic_length");
  detail::require_nonnegative(spdc.dielectric_bandwidth_hz, "dielectric_bandwidth_hz");
  detail::require_nonnegative(spdc.magnetic_bandwidth_hz, "magnetic_bandwidth_hz");
  detail::require_nonnegative(spdc.solid_angle_sr, "solid_angle_sr");
  detail::require_nonnegative(spdc.area_m2, "spdc area");
  detail::require_positive(spdc.intensity_enhancement, "intensity_enhancement");
  if (phasematch.index_model != "ferrite" && phasematch.index_model != "constant")
    throw ConfigError("phasematch.index_model must be 'ferrite' or 'constant'");
  match_problem().validate();
  linkbudget.budget.validate();
  detail::require_positive(linkbudget.target_snr, "target_snr");
  detail::require_positive(linkbudget.frequency_scale, "frequency_scale");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  bell_config().validate();
}

phasematch::MatchProblem Scenario::match_problem() const {
  phasematch::MatchProblem p;
  if (phasematch.index_model == "constant") {
    p.index = phasematch::constant_index_model(phasematch.n_strong, phasematch.n_weak);
  } else {
    p.index = phasematch::ferrite_index_model(material.material, bias.resolve(material.material));
  }
  p.pump.omega_p = kTwoPi * phasematch.pump_frequency_hz;
  p.pump.coupling = phasematch.pump_coupling;
  p.pump.direction = phasematch.pump_direction;
  p.theta_max = phasematch.theta_max;
  p.omega_min = kTwoPi * phasematch.f_min_hz;
  p.interaction = phasematch.interaction;
  p.n_theta = phasematch.n_theta;
  p.n_omega = phasematch.n_omega;
  p.refine_tol = phasematch.refine_tol;
  p.interaction_length = phasematch.interaction_length;
  p.refine_candidates = phasematch.refine_candidates;
  p.threads = threads;
  return p;
}

belltest::BellRunConfig Scenario::bell_config() const {
  belltest::BellRunConfig c = bell;
  c.seed = seed;
  c.threads = threads;
  if (c.source != belltest::SourceModel::Quantum) c.coherence_blocks = lhv_coherence_blocks;
  return c;
}

Scenario paper_defaults() { return Scenario{}; }

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["threads"] = s.threads;
  j["output_dir"] = s.output_dir;
  j["material"] = material_json(s.material);
  j["bias"] = {{"applied_field_H0", optional_json(s.bias.applied_field_H0)},
               {"f0_hz", s.bias.f0_hz},
               {"fM_hz", s.bias.fM_hz}};
  j["pump"] = {{"power_W", s.pump.power_W},
               {"area_m2", s.pump.area_m2},
               {"frequency_hz", s.pump.frequency_hz},
               {"alternate_power_W", s.pump.alternate_power_W}};
  j["dispersion"] = {{"f_min_hz", s.dispersion.f_min_hz},
                     {"f_max_hz", s.dispersion.f_max_hz},
                     {"points", s.dispersion.points},
                     {"theta_deg", s.dispersion.theta_deg}};
  j["hysteresis"] = {{"material_preset", s.hysteresis.material_preset},
                     {"h_min", s.hysteresis.h_min},
                     {"h_max", s.hysteresis.h_max},
                     {"points", s.hysteresis.points}};
  const SpdcSpec& p = s.spdc;
  j["spdc"] = {{"signal_frequency_hz", p.signal_frequency_hz},
               {"idler_frequency_hz", p.idler_frequency_hz},
               {"chi2_electric", p.chi2_electric},
               {"n_dielectric", p.n_dielectric},
               {"dielectric_length", p.dielectric_length},
               {"dielectric_bandwidth_hz", p.dielectric_bandwidth_hz},
               {"chi2_magnetic", optional_json(p.chi2_magnetic)},
               {"n_magnetic", p.n_magnetic},
               {"magnetic_length", p.magnetic_length},
               {"magnetic_bandwidth_hz", p.magnetic_bandwidth_hz},
               {"gamma_M_override", optional_json(p.gamma_M_override)},
               {"solid_angle_sr", p.solid_angle_sr},
               {"area_m2", p.area_m2},
               {"intensity_enhancement", p.intensity_enhancement}};
  const PhasematchSpec& m = s.phasematch;
  j["phasematch"] = {{"index_model", m.index_model},
                     {"n_strong", m.n_strong},
                     {"n_weak", m.n_weak},
                     {"pump_frequency_hz", m.pump_frequency_hz},
                     {"pump_coupling", coupling_name(m.pump_coupling)},
                     {"pump_direction", {m.pump_direction.x(), m.pump_direction.y(), m.pump_direction.z()}},
                     {"theta_max", m.theta_max},
                     {"f_min_hz", m.f_min_hz},
                     {"interaction", interaction_name(m.interaction)},
                     {"n_theta", m.n_theta},
                     {"n_omega", m.n_omega},
                     {"refine_tol", m.refine_tol},
                     {"interaction_length", m.interaction_length},
                     {"refine_candidates", m.refine_candidates}};
  const linkbudget::LinkBudget& b = s.linkbudget.budget;
  j["linkbudget"] = {{"noise_figure_dB", b.noise_figure_dB},
                     {"linear_noise_factor", optional_json(b.linear_noise_factor)},
                     {"ambient_T0", b.ambient_T0},
                     {"bandwidth_B", b.bandwidth_B},
                     {"loss_L", b.loss_L},
                     {"entangled_power_Ps", b.entangled_power_Ps},
                     {"nbar", b.nbar},
                     {"signal_frequency", b.signal_frequency},
                     {"derive_nbar", s.linkbudget.derive_nbar},
                     {"Ps_from_flux", s.linkbudget.Ps_from_flux},
                     {"target_snr", s.linkbudget.target_snr},
                     {"frequency_scale", s.linkbudget.frequency_scale}};
  const belltest::BellRunConfig& c = s.bell;
  j["bell"] = {{"state", {{"kind", state_name(c.state.selector)}, {"phase_rad", c.state.phase}}},
               {"source", source_name(c.source)},
               {"pair_rate", c.pair_rate},
               {"pair_amplitude_A", c.pair_amplitude_A},
               {"thermal_noise_power", c.thermal_noise_power},
               {"amplified_thermal_power", c.amplified_thermal_power},
               {"analyzer_a_rad", analyzer_json(c.analyzer_a)},
               {"analyzer_b_rad", analyzer_json(c.analyzer_b)},
               {"sample_rate", c.sample_rate},
               {"duration_t", c.duration_t},
               {"channel_model", channel_name(c.channel_model)},
               {"pump_phase_rad", c.pump_phase},
               {"angles_rad",
                {{"a", c.angles.a}, {"a_prime", c.angles.a_prime}, {"b", c.angles.b}, {"b_prime", c.angles.b_prime}}},
               {"coherence_blocks", c.coherence_blocks},
               {"lhv_coherence_blocks", s.lhv_coherence_blocks},
               {"subruns", c.subruns},
               {"bootstrap_resamples", c.bootstrap_resamples}};
  return j;
}

Scenario from_json(const json& j) {
  check_keys(j, "scenario",
             {"name", "seed", "threads", "output_dir", "material", "bias", "pump", "dispersion", "hysteresis", "spdc",
              "phasematch", "linkbudget", "bell"});
  Scenario s = paper_defaults();
  read(j, "name", s.name);
  read(j, "seed", s.seed);
  read(j, "threads", s.threads);
  read(j, "output_dir", s.output_dir);
  if (j.contains("material")) s.material = parse_material(j.at("material"));
  if (j.contains("bias")) {
    const json& b = j.at("bias");
    check_keys(b, "bias", {"applied_field_H0", "f0_hz", "fM_hz"});
    read_optional(b, "applied_field_H0", s.bias.applied_field_H0);
    read(b, "f0_hz", s.bias.f0_hz);
    read(b, "fM_hz", s.bias.fM_hz);
  }
  if (j.contains("pump")) {
    const json& p = j.at("pump");
    check_keys(p, "pump", {"power_W", "area_m2", "frequency_hz", "alternate_power_W"});
    read(p, "power_W", s.pump.power_W);
    read(p, "area_m2", s.pump.area_m2);
    read(p, "frequency_hz", s.pump.frequency_hz);
    read(p, "alternate_power_W", s.pump.alternate_power_W);
  }
  if (j.contains("dispersion")) {
    const json& d = j.at("dispersion");
    check_keys(d, "dispersion", {"f_min_hz", "f_max_hz", "points", "theta_deg"});
    read(d, "f_min_hz", s.dispersion.f_min_hz);
    read(d, "f_max_hz", s.dispersion.f_max_hz);
    read(d, "points", s.dispersion.points);
    read(d, "theta_deg", s.dispersion.theta_deg);
  }
  if (j.contains("hysteresis")) {
    const json& h = j.at("hysteresis");
    check_keys(h, "hysteresis", {"material_preset", "h_min", "h_max", "points"});
    read(h, "material_preset", s.hysteresis.material_preset);
    read(h, "h_min", s.hysteresis.h_min);
    read(h, "h_max", s.hysteresis.h_max);
    read(h, "points", s.hysteresis.points);
  }
  if (j.contains("spdc")) {
    const json& p = j.at("spdc");
    check_keys(p, "spdc",
               {"signal_frequency_hz", "idler_frequency_hz", "chi2_electric", "n_dielectric", "dielectric_length",
                "dielectric_bandwidth_hz", "chi2_magnetic", "n_magnetic", "magnetic_length", "magnetic_bandwidth_hz",
                "gamma_M_override", "solid_angle_sr", "area_m2", "intensity_enhancement"});
    SpdcSpec& o = s.spdc;
    read(p, "signal_frequency_hz", o.signal_frequency_hz);
    read(p, "idler_frequency_hz", o.idler_frequency_hz);
    read(p, "chi2_electric", o.chi2_electric);
    read(p, "n_dielectric", o.n_dielectric);
    read(p, "dielectric_length", o.dielectric_length);
    read(p, "dielectric_bandwidth_hz", o.dielectric_bandwidth_hz);
    read_optional(p, "chi2_magnetic", o.chi2_magnetic);
    read(p, "n_magnetic", o.n_magnetic);
    read(p, "magnetic_length", o.magnetic_length);
    read(p, "magnetic_bandwidth_hz", o.magnetic_bandwidth_hz);
    read_optional(p, "gamma_M_override", o.gamma_M_override);
    read(p, "solid_angle_sr", o.solid_angle_sr);
    read(p, "area_m2", o.area_m2);
    read(p, "intensity_enhancement", o.intensity_enhancement);
  }
  if (j.contains("phasematch")) {
    const json& p = j.at("phasematch");
    check_keys(p, "phasematch",
               {"index_model", "n_strong", "n_weak", "pump_frequency_hz", "pump_coupling", "pump_direction",
                "theta_max", "f_min_hz", "interaction", "n_theta", "n_omega", "refine_tol", "interaction_length",
                "refine_candidates"});
    PhasematchSpec& o = s.phasematch;
    read(p, "index_model", o.index_model);
    read(p, "n_strong", o.n_strong);
    read(p, "n_weak", o.n_weak);
    read(p, "pump_frequency_hz", o.pump_frequency_hz);
    if (p.contains("pump_coupling")) {
      std::string c;
      read(p, "pump_coupling", c);
      o.pump_coupling = parse_coupling(c);
    }
    if (p.contains("pump_direction")) {
      std::vector<double> d;
      read(p, "pump_direction", d);
      if (d.size() != 3) throw ConfigError("pump_direction must have 3 components");
      o.pump_direction = Eigen::Vector3d(d[0], d[1], d[2]);
    }
    read(p, "theta_max", o.theta_max);
    read(p, "f_min_hz", o.f_min_hz);
    if (p.contains("interaction")) {
      std::string i;
      read(p, "interaction", i);
      o.interaction = parse_interaction(i);
    }
    read(p, "n_theta", o.n_theta);
    read(p, "n_omega", o.n_omega);
    read(p, "refine_tol", o.refine_tol);
    read(p, "interaction_length", o.interaction_length);
    read(p, "refine_candidates", o.refine_candidates);
  }
  if (j.contains("linkbudget")) {
    const json& p = j.at("linkbudget");
    check_keys(p, "linkbudget",
               {"noise_figure_dB", "linear_noise_factor", "ambient_T0", "bandwidth_B", "loss_L",
                "entangled_power_Ps", "nbar", "signal_frequency", "derive_nbar", "Ps_from_flux", "target_snr", "frequency_scale"});
    linkbudget::LinkBudget& b = s.linkbudget.budget;
    read(p, "noise_figure_dB", b.noise_figure_dB);
    read_optional(p, "linear_noise_factor", b.linear_noise_factor);
    read(p, "ambient_T0", b.ambient_T0);
    read(p, "bandwidth_B", b.bandwidth_B);
    read(p, "loss_L", b.loss_L);
    read(p, "entangled_power_Ps", b.entangled_power_Ps);
    read(p, "nbar", b.nbar);
    read(p, "signal_frequency", b.signal_frequency);
    read(p, "derive_nbar", s.linkbudget.derive_nbar);
    read(p, "Ps_from_flux", s.linkbudget.Ps_from_flux);
    read(p, "target_snr", s.linkbudget.target_snr);
    read(p, "frequency_scale", s.linkbudget.frequency_scale);
  }
  if (j.contains("bell")) {
    const json& p = j.at("bell");
    check_keys(p, "bell",
               {"state", "source", "pair_rate", "pair_amplitude_A", "thermal_noise_power", "amplified_thermal_power",
                "analyzer_a_rad", "analyzer_b_rad", "sample_rate", "duration_t", "channel_model", "pump_phase_rad",
                "angles_rad", "coherence_blocks", "lhv_coherence_blocks", "subruns", "bootstrap_resamples"});
    belltest::BellRunConfig& c = s.bell;
    if (p.contains("state")) {
      const json& st = p.at("state");
      check_keys(st, "bell.state", {"kind", "phase_rad"});
      std::string kind = state_name(c.state.selector);
      read(st, "kind", kind);
      c.state.selector = parse_state(kind);
      read(st, "phase_rad", c.state.phase);
    }
    if (p.contains("source")) {
      std::string src;
      read(p, "source", src);
      c.source = parse_source(src);
    }
    read(p, "pair_rate", c.pair_rate);
    read(p, "pair_amplitude_A", c.pair_amplitude_A);
    read(p, "thermal_noise_power", c.thermal_noise_power);
    read(p, "amplified_thermal_power", c.amplified_thermal_power);
    read_analyzer(p, "analyzer_a_rad", c.analyzer_a);
    read_analyzer(p, "analyzer_b_rad", c.analyzer_b);
    read(p, "sample_rate", c.sample_rate);
    read(p, "duration_t", c.duration_t);
    if (p.contains("channel_model")) {
      std::string ch;
      read(p, "channel_model", ch);
      c.channel_model = parse_channel(ch);
    }
    read(p, "pump_phase_rad", c.pump_phase);
    if (p.contains("angles_rad")) {
      const json& a = p.at("angles_rad");
      check_keys(a, "bell.angles_rad", {"a", "a_prime", "b", "b_prime"});
      read(a, "a", c.angles.a);
      read(a, "a_prime", c.angles.a_prime);
      read(a, "b", c.angles.b);
      read(a, "b_prime", c.angles.b_prime);
    }
    read(p, "coherence_blocks", c.coherence_blocks);
    read(p, "lhv_coherence_blocks", s.lhv_coherence_blocks);
    read(p, "subruns", c.subruns);
    read(p, "bootstrap_resamples", c.bootstrap_resamples);
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::string schema_text() {
  return R"(Scenario file (JSON object). Every key is optional; missing keys keep the
built-in paper values. Unknown keys are rejected.

  name                 text
  seed                 unsigned 64-bit integer
  threads              worker threads (>= 1); results do not depend on it
  output_dir           directory for data files
  material             preset ("yig_pure" | "yig_ho_x1.5" | "" for inline) plus overrides:
                       eps_prime, loss_tangent, damping_alpha,
                       saturation_magnetization_Ms [A/m], static_magnetization_M0 [A/m],
                       resonance_linewidth_dH [A/m],
                       hysteresis {Ms, Hc [A/m], remanence_Mr [A/m], langevin_a [1/T],
                                   branch "ascending" | "descending"} or null
  bias                 applied_field_H0 [A/m] or null, f0_hz [Hz], fM_hz [Hz]
                       (H0 takes precedence and uses static_magnetization_M0)
  pump                 power_W [W], area_m2 [m^2], frequency_hz [Hz], alternate_power_W [W]
  dispersion           f_min_hz, f_max_hz [Hz], points (>= 2), theta_deg (90 = transverse)
  hysteresis           material_preset, h_min, h_max [A/m], points
  spdc                 signal_frequency_hz, idler_frequency_hz [Hz],
                       chi2_electric [m/V], n_dielectric, dielectric_length [m],
                       dielectric_bandwidth_hz [Hz], chi2_magnetic [m/A] or null (from material),
                       n_magnetic, magnetic_length [m], magnetic_bandwidth_hz [Hz],
                       gamma_M_override [1/m] or null, solid_angle_sr [sr], area_m2 [m^2],
                       intensity_enhancement
  phasematch           index_model "ferrite" | "constant", n_strong, n_weak (constant model),
                       pump_frequency_hz [Hz], pump_coupling "strong" | "weak",
                       pump_direction [x, y, z] (bias along z), theta_max [rad], f_min_hz [Hz],
                       interaction "type1" | "type2", n_theta, n_omega, refine_tol [rad/m],
                       interaction_length [m], refine_candidates
  linkbudget           noise_figure_dB [dB], linear_noise_factor or null, ambient_T0 [K],
                       bandwidth_B [Hz], loss_L, entangled_power_Ps [W], nbar,
                       signal_frequency [Hz], derive_nbar (bool), Ps_from_flux (bool), target_snr,
                       frequency_scale
  bell                 state {kind "phi" | "psi" | "sagnac", phase_rad},
                       source "quantum" | "lhv" | "independent",
                       pair_rate [1/s], pair_amplitude_A, thermal_noise_power,
                       amplified_thermal_power [field units^2], analyzer_a_rad, analyzer_b_rad
                       (null = removed), sample_rate [Hz], duration_t [s],
                       channel_model "twin" | "single", pump_phase_rad,
                       angles_rad {a, a_prime, b, b_prime}, coherence_blocks (quantum source),
                       lhv_coherence_blocks (hidden-variable sources), subruns,
                       bootstrap_resamples
)";
}

}  // namespace yigbell::scenario
