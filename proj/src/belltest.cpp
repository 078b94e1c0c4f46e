#include "yigbell/belltest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/parallel.hpp"

namespace yigbell::belltest {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kHalfPi = kPi / 2;
constexpr int kCheckpointsPerSubrun = 8;

constexpr std::uint64_t kSaltNoiseAux = 1;
constexpr std::uint64_t kSaltHidden = 2;
constexpr std::uint64_t kSaltBootstrap = 3;
constexpr std::uint64_t kSaltRepeat = 4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  return splitmix64(splitmix64(seed ^ splitmix64(salt)) + index);
}

double uniform01(std::mt19937_64& rng) {
  // 53 random bits -> [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex circular_gaussian(std::mt19937_64& rng, std::normal_distribution<double>& normal,
                          double power) {
  const double s = std::sqrt(0.5 * power);
  const double re = normal(rng);
  const double im = normal(rng);
  return {s * re, s * im};
}

std::vector<double> projection_angles(const Analyzer& an) {
  if (an.is_removed()) return {0.0, kHalfPi};
  return {*an.angle};
}

struct HiddenVariables {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
};

// Counter-based: one hash per block, no engine to seed.
HiddenVariables draw_hidden(const BellRunConfig& c, std::size_t block) {
  const std::uint64_t h1 = derived_seed(c.seed, block, kSaltHidden);
  const std::uint64_t h2 = splitmix64(h1);
  HiddenVariables h;
  h.lambda_a = kPi * static_cast<double>(h1 >> 11) * 0x1.0p-53;
  h.lambda_b = c.source == SourceModel::IndependentHiddenVariable ? kPi * static_cast<double>(h2 >> 11) * 0x1.0p-53
                                                                  : h.lambda_a;
  return h;
}

struct SubrunAccumulator {
  std::vector<Complex> sum_z;
  std::vector<double> block_power;
  std::size_t samples = 0;
  int blocks = 0;
  double power_a = 0.0;
  double power_b = 0.0;
  std::vector<std::pair<std::size_t, Complex>> checkpoints;  // local sample index, partial sum
};

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  const std::uint64_t s = derived_seed(seed, index, salt);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

// ---- states -----------------------------------------------------------------

std::array<BellState::Term, 2> BellState::terms() const {
  const double r = 1.0 / kSqrt2;
  const Complex rel = std::polar(r, phase);
  switch (selector) {
    case StateKind::PhiTypeI:
      return {Term{Complex(r, 0.0), kHalfPi, kHalfPi}, Term{rel, 0.0, 0.0}};
    case StateKind::PsiTypeII:
    case StateKind::SagnacTypeII:
      return {Term{Complex(r, 0.0), 0.0, kHalfPi}, Term{rel, kHalfPi, 0.0}};
  }
  return {};
}

std::string BellState::description() const {
  std::ostringstream os;
  switch (selector) {
    case StateKind::PhiTypeI:
      os << "(|V_s V_i> + e^{i delta}|H_s H_i>)/sqrt2, delta = " << phase;
      break;
    case StateKind::PsiTypeII:
      os << "(|H_s V_i> + e^{i theta}|V_s H_i>)/sqrt2, theta = " << phase;
      break;
    case StateKind::SagnacTypeII:
      os << "Sagnac (|H_s V_i> + e^{i theta}|V_s H_i>)/sqrt2, theta = " << phase;
      break;
  }
  return os.str();
}

Complex BellState::projection_amplitude(double a, double b) const {
  Complex amp{0.0, 0.0};
  for (const Term& t : terms()) amp += t.coefficient * std::cos(a - t.signal_angle) * std::cos(b - t.idler_angle);
  return amp;
}

// ---- configuration ----------------------------------------------------------

void BellRunConfig::validate() const {
  detail::require_positive(sample_rate, "sample rate");
  detail::require_positive(duration_t, "duration");
  detail::require_nonnegative(pair_rate, "pair rate");
  detail::require_nonnegative(thermal_noise_power, "thermal noise power");
  detail::require_nonnegative(amplified_thermal_power, "amplified thermal power");
  if (pair_rate > sample_rate) throw ConfigError("pair rate must not exceed the sample rate");
  if (subruns < 2) throw ConfigError("at least 2 sub-runs are required");
  if (coherence_blocks < 1) throw ConfigError("coherence_blocks must be >= 1");
  if (coherence_blocks > 1 && coherence_blocks % subruns != 0)
    throw ConfigError("coherence_blocks must be 1 or a multiple of subruns");
  if (bootstrap_resamples < 0) throw ConfigError("bootstrap_resamples must be >= 0");
  const std::size_t k = sample_count();
  if (k < static_cast<std::size_t>(subruns)) throw ConfigError("fewer samples than sub-runs");
  if (k < static_cast<std::size_t>(coherence_blocks)) throw ConfigError("fewer samples than coherence blocks");
}

std::size_t BellRunConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(sample_rate * duration_t));
}

// ---- pair events ------------------------------------------------------------

PairFields sample_pair_event(const BellState& state, double analyzer_a, double analyzer_b,
                             double amplitude, double pump_phase, std::mt19937_64& rng) {
  PairFields p;
  p.phase_s = kTwoPi * uniform01(rng);
  p.phase_i = pump_phase - p.phase_s;
  const auto terms = state.terms();
  const BellState::Term& t = terms[uniform01(rng) < 0.5 ? 0 : 1];
  const Complex sa = kSqrt2 * t.coefficient * std::cos(analyzer_a - t.signal_angle);
  const double sb = kSqrt2 * std::cos(analyzer_b - t.idler_angle);
  p.signal = amplitude * std::polar(1.0, p.phase_s) * sa;
  p.idler = amplitude * std::polar(1.0, p.phase_i) * sb;
  return p;
}

// ---- simulation -------------------------------------------------------------

Complex RunOutput::subrun_mean(std::size_t r) const {
  return subrun_sum_z[r][0] / static_cast<double>(subrun_samples[r]);
}

double RunOutput::resampled_N(const std::vector<std::size_t>& idx) const {
  double n = 0.0;
  for (int m = 0; m < integrators; ++m) {
    if (coherence_blocks == 1) {
      Complex sum{0.0, 0.0};
      std::size_t count = 0;
      for (std::size_t r : idx) {
        sum += subrun_sum_z[r][m];
        count += subrun_samples[r];
      }
      n += std::norm(sum / static_cast<double>(count));
    } else {
      double power = 0.0;
      int blocks = 0;
      for (std::size_t r : idx) {
        power += subrun_block_power[r][m];
        blocks += subrun_blocks[r];
      }
      n += power / blocks;
    }
  }
  return n;
}

RunOutput simulate_run(const BellRunConfig& c) {
  c.validate();
  const std::size_t K = c.sample_count();
  const std::size_t R = static_cast<std::size_t>(c.subruns);
  const std::size_t B = static_cast<std::size_t>(c.coherence_blocks);
  const std::vector<double> a_angles = projection_angles(c.analyzer_a);
  const std::vector<double> b_angles = projection_angles(c.analyzer_b);
  const std::size_t na = a_angles.size();
  const std::size_t nb = b_angles.size();
  const std::size_t M = na * nb;
  const double p_pair = c.pair_probability();
  const double noise = c.thermal_noise_power + c.amplified_thermal_power;
  const Complex demod = std::polar(1.0, -c.pump_phase);
  const bool quantum = c.source == SourceModel::Quantum;
  const auto terms = c.state.terms();
  const double A = c.pair_amplitude_A;

  // LHV sources with a single coherence block share one lambda across sub-runs.
  const HiddenVariables global_hidden = draw_hidden(c, 0);

  std::vector<SubrunAccumulator> acc(R);
  detail::parallel_for(R, c.threads, [&](std::size_t r) {
    SubrunAccumulator& out = acc[r];
    out.sum_z.assign(M, Complex{0.0, 0.0});
    out.block_power.assign(M, 0.0);
    auto rng = make_stream(c.seed, r, 0);
    auto aux = make_stream(c.seed, r, kSaltNoiseAux);
    std::normal_distribution<double> normal;
    std::normal_distribution<double> normal_aux;

    const std::size_t k0 = r * K / R;
    const std::size_t k1 = (r + 1) * K / R;
    out.samples = k1 - k0;

    // Block ranges inside this sub-run.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::vector<std::size_t> block_ids;
    if (B == 1) {
      blocks.emplace_back(k0, k1);
      block_ids.push_back(0);
    } else {
      const std::size_t per = B / R;
      for (std::size_t q = 0; q < per; ++q) {
        const std::size_t b = r * per + q;
        blocks.emplace_back(b * K / B, (b + 1) * K / B);
        block_ids.push_back(b);
      }
    }
    out.blocks = B == 1 ? 0 : static_cast<int>(blocks.size());

    std::vector<Complex> ua(na), vb(nb), block_sum(M);
    std::vector<double> sa_cos(na), sb_cos(nb);
    const std::size_t local_total = out.samples;
    std::size_t next_checkpoint = 1;
    std::size_t local_k = 0;

    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const HiddenVariables hidden = (quantum || B == 1) ? global_hidden : draw_hidden(c, block_ids[bi]);
      if (!quantum) {
        for (std::size_t i = 0; i < na; ++i) sa_cos[i] = std::cos(a_angles[i] - hidden.lambda_a);
        for (std::size_t j = 0; j < nb; ++j) sb_cos[j] = std::cos(b_angles[j] - hidden.lambda_b);
      }
      std::fill(block_sum.begin(), block_sum.end(), Complex{0.0, 0.0});
      const auto [s0, s1] = blocks[bi];
      for (std::size_t k = s0; k < s1; ++k) {
        std::fill(ua.begin(), ua.end(), Complex{0.0, 0.0});
        std::fill(vb.begin(), vb.end(), Complex{0.0, 0.0});
        if (p_pair > 0.0 && uniform01(rng) < p_pair) {
          const double phase_s = kTwoPi * uniform01(rng);
          const double phase_i = c.pump_phase - phase_s;
          const Complex es = A * std::polar(1.0, phase_s);
          const Complex ei = A * std::polar(1.0, phase_i);
          if (quantum) {
            const BellState::Term& t = terms[uniform01(rng) < 0.5 ? 0 : 1];
            for (std::size_t i = 0; i < na; ++i)
              ua[i] = es * (kSqrt2 * t.coefficient * std::cos(a_angles[i] - t.signal_angle));
            for (std::size_t j = 0; j < nb; ++j)
              vb[j] = ei * (kSqrt2 * std::cos(b_angles[j] - t.idler_angle));
          } else {
            for (std::size_t i = 0; i < na; ++i) ua[i] = es * sa_cos[i];
            for (std::size_t j = 0; j < nb; ++j) vb[j] = ei * sb_cos[j];
          }
        }
        if (noise > 0.0) {
          ua[0] += circular_gaussian(rng, normal, noise);
          vb[0] += circular_gaussian(rng, normal, noise);
          if (na > 1) ua[1] += circular_gaussian(aux, normal_aux, noise);
          if (nb > 1) vb[1] += circular_gaussian(aux, normal_aux, noise);
        }
        out.power_a += std::norm(ua[0]);
        out.power_b += std::norm(vb[0]);
        for (std::size_t i = 0; i < na; ++i) {
          for (std::size_t j = 0; j < nb; ++j) {
            const Complex z = ua[i] * vb[j] * demod;
            block_sum[i * nb + j] += z;
          }
        }
        ++local_k;
        if (local_k * kCheckpointsPerSubrun >= next_checkpoint * local_total) {
          Complex partial = out.sum_z[0] + block_sum[0];
          out.checkpoints.emplace_back(local_k, partial);
          while (local_k * kCheckpointsPerSubrun >= next_checkpoint * local_total) ++next_checkpoint;
        }
      }
      const double len = static_cast<double>(s1 - s0);
      for (std::size_t m = 0; m < M; ++m) {
        out.sum_z[m] += block_sum[m];
        if (B > 1) out.block_power[m] += std::norm(block_sum[m] / len);
      }
    }
  });

  RunOutput run;
  run.samples = K;
  run.integrators = static_cast<int>(M);
  run.coherence_blocks = static_cast<int>(B);
  run.subrun_sum_z.resize(R);
  run.subrun_block_power.resize(R);
  run.subrun_samples.resize(R);
  run.subrun_blocks.resize(R);
  std::size_t offset = 0;
  Complex running{0.0, 0.0};
  double power_a = 0.0, power_b = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    run.subrun_sum_z[r] = acc[r].sum_z;
    run.subrun_block_power[r] = acc[r].block_power;
    run.subrun_samples[r] = acc[r].samples;
    run.subrun_blocks[r] = acc[r].blocks;
    power_a += acc[r].power_a;
    power_b += acc[r].power_b;
    for (const auto& [k, partial] : acc[r].checkpoints)
      run.trajectory.emplace_back(offset + k, (running + partial) / static_cast<double>(offset + k));
    running += acc[r].sum_z[0];
    offset += acc[r].samples;
  }
  run.Z = running / static_cast<double>(K);
  run.channel_a_power = power_a / K;
  run.channel_b_power = power_b / K;
  std::vector<std::size_t> all(R);
  std::iota(all.begin(), all.end(), 0);
  run.N = run.resampled_N(all);
  return run;
}

RunOutput lhv_oracle(const BellRunConfig& config) {
  BellRunConfig c = config;
  if (c.source == SourceModel::Quantum) c.source = SourceModel::LocalHiddenVariable;
  return simulate_run(c);
}

// ---- statistics -------------------------------------------------------------

double correlation(const SettingCounts& n) {
  const double sum = n.pp + n.pm + n.mp + n.mm;
  if (!(sum > 0.0)) throw NumericalError("correlation undefined: all four counts are zero");
  return (n.pp + n.mm - n.pm - n.mp) / sum;
}

double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp) {
  return e_ab - e_abp + e_apb + e_apbp;
}

double chsh_statistic(const std::array<SettingCounts, 4>& s) {
  return chsh_combination(correlation(s[0]), correlation(s[1]), correlation(s[2]), correlation(s[3]));
}

double single_channel_statistic(const SingleChannelCounts& n) {
  if (!(n.removed_removed > 0.0))
    throw NumericalError("single-channel statistic undefined: N(inf, inf) is zero");
  return (n.ab - n.abp + n.apb + n.apbp - n.ap_removed - n.removed_b) / n.removed_removed;
}

namespace {

struct PlannedRun {
  std::string label;
  Analyzer a;
  Analyzer b;
};

std::string degrees(const Analyzer& an) {
  if (an.is_removed()) return "inf";
  std::ostringstream os;
  os << (*an.angle * 180.0 / kPi);
  return os.str();
}

std::vector<RunOutput> execute(const BellRunConfig& config, const std::vector<PlannedRun>& plan) {
  std::vector<RunOutput> runs;
  runs.reserve(plan.size());
  for (const PlannedRun& p : plan) {
    BellRunConfig c = config;
    c.analyzer_a = p.a;
    c.analyzer_b = p.b;
    runs.push_back(simulate_run(c));
  }
  return runs;
}

template <typename Statistic>
double bootstrap_stderr(const BellRunConfig& config, const std::vector<RunOutput>& runs,
                        Statistic&& statistic) {
  if (config.bootstrap_resamples < 2) return 0.0;
  auto rng = make_stream(config.seed, 0, kSaltBootstrap);
  const std::size_t R = static_cast<std::size_t>(config.subruns);
  std::vector<double> replicates;
  std::vector<std::size_t> idx(R);
  std::vector<double> n(runs.size());
  for (int rep = 0; rep < config.bootstrap_resamples; ++rep) {
    for (auto& i : idx) i = static_cast<std::size_t>(uniform01(rng) * R);
    for (std::size_t s = 0; s < runs.size(); ++s) n[s] = runs[s].resampled_N(idx);
    try {
      replicates.push_back(statistic(n));
    } catch (const NumericalError&) {
      // degenerate replicate
    }
  }
  return sample_std(replicates);
}

}  // namespace

BellRunResult run_chsh(const BellRunConfig& config) {
  config.validate();
  const BellAngles& ang = config.angles;
  const std::array<std::pair<double, double>, 4> pairs{
      {{ang.a, ang.b}, {ang.a, ang.b_prime}, {ang.a_prime, ang.b}, {ang.a_prime, ang.b_prime}}};
  std::vector<PlannedRun> plan;
  for (const auto& [x, y] : pairs) {
    plan.push_back({"N(a,b)", Analyzer::at(x), Analyzer::at(y)});
    plan.push_back({"N(a,b_perp)", Analyzer::at(x), Analyzer::at(y + kHalfPi)});
    plan.push_back({"N(a_perp,b)", Analyzer::at(x + kHalfPi), Analyzer::at(y)});
    plan.push_back({"N(a_perp,b_perp)", Analyzer::at(x + kHalfPi), Analyzer::at(y + kHalfPi)});
  }
  const std::vector<RunOutput> runs = execute(config, plan);

  auto statistic = [](const std::vector<double>& n) {
    std::array<SettingCounts, 4> s;
    for (std::size_t q = 0; q < 4; ++q) s[q] = {n[4 * q], n[4 * q + 1], n[4 * q + 2], n[4 * q + 3]};
    return chsh_statistic(s);
  };

  BellRunResult result;
  result.channel_model = ChannelModel::TwinChannel;
  result.seed = config.seed;
  std::vector<double> n(runs.size());
  for (std::size_t s = 0; s < runs.size(); ++s) {
    n[s] = runs[s].N;
    result.N_values.push_back({plan[s].label + " @ (" + degrees(plan[s].a) + "," + degrees(plan[s].b) + ")",
                               plan[s].a.angle, plan[s].b.angle, runs[s].N});
    result.samples_used += runs[s].samples;
  }
  for (std::size_t q = 0; q < 4; ++q) {
    const SettingCounts sc{n[4 * q], n[4 * q + 1], n[4 * q + 2], n[4 * q + 3]};
    result.E_values.push_back({pairs[q].first, pairs[q].second, correlation(sc)});
  }
  result.S = statistic(n);
  result.S_stderr = bootstrap_stderr(config, runs, statistic);
  return result;
}

BellRunResult run_single_channel(const BellRunConfig& config) {
  config.validate();
  const BellAngles& ang = config.angles;
  const std::vector<PlannedRun> plan{
      {"N(a,b)", Analyzer::at(ang.a), Analyzer::at(ang.b)},
      {"N(a,b')", Analyzer::at(ang.a), Analyzer::at(ang.b_prime)},
      {"N(a',b)", Analyzer::at(ang.a_prime), Analyzer::at(ang.b)},
      {"N(a',b')", Analyzer::at(ang.a_prime), Analyzer::at(ang.b_prime)},
      {"N(a',inf)", Analyzer::at(ang.a_prime), Analyzer::removed()},
      {"N(inf,b)", Analyzer::removed(), Analyzer::at(ang.b)},
      {"N(inf,inf)", Analyzer::removed(), Analyzer::removed()},
  };
  const std::vector<RunOutput> runs = execute(config, plan);
  auto statistic = [](const std::vector<double>& n) {
    return single_channel_statistic({n[0], n[1], n[2], n[3], n[4], n[5], n[6]});
  };
  BellRunResult result;
  result.channel_model = ChannelModel::SingleChannel;
  result.seed = config.seed;
  std::vector<double> n(runs.size());
  for (std::size_t s = 0; s < runs.size(); ++s) {
    n[s] = runs[s].N;
    result.N_values.push_back({plan[s].label + " @ (" + degrees(plan[s].a) + "," + degrees(plan[s].b) + ")",
                               plan[s].a.angle, plan[s].b.angle, runs[s].N});
    result.samples_used += runs[s].samples;
  }
  result.S = statistic(n);
  result.S_stderr = bootstrap_stderr(config, runs, statistic);
  return result;
}

BellRunResult run_bell_test(const BellRunConfig& config) {
  return config.channel_model == ChannelModel::TwinChannel ? run_chsh(config)
                                                           : run_single_channel(config);
}

// ---- experiments ------------------------------------------------------------

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw NumericalError("log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw NumericalError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

ScalingResult snr_scaling_experiment(const BellRunConfig& config, const std::vector<double>& t_grid,
                                     int repeats) {
  if (t_grid.size() < 2) throw ConfigError("t_grid needs at least two points");
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 10.0 * (1.0 - 1e-12)) throw ConfigError("t_grid must span at least one decade");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  for (double t : t_grid)
    if (std::llround(config.sample_rate * t) < 100) throw ConfigError("insufficient samples: fewer than 100 at some t");

  ScalingResult result;
  if (config.thermal_noise_power == 0.0 && config.amplified_thermal_power == 0.0) {
    result.noise_free = true;
    result.exponent = std::numeric_limits<double>::quiet_NaN();
    for (double t : t_grid) result.points.push_back({t, std::numeric_limits<double>::infinity()});
    return result;
  }
  std::vector<double> ts, snrs;
  for (double t : t_grid) {
    double snr_sum = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
      BellRunConfig c = config;
      c.duration_t = t;
      c.seed = derived_seed(config.seed, static_cast<std::uint64_t>(rep), kSaltRepeat);
      const RunOutput run = simulate_run(c);
      const std::size_t R = run.subrun_samples.size();
      double var = 0.0;
      for (std::size_t r = 0; r < R; ++r) var += std::norm(run.subrun_mean(r) - run.Z);
      var /= (R - 1);
      const double stderr_z = std::sqrt(var / R);
      snr_sum += std::abs(run.Z) / stderr_z;
    }
    const double snr = snr_sum / repeats;
    result.points.push_back({t, snr});
    ts.push_back(t);
    snrs.push_back(snr);
  }
  result.exponent = log_log_slope(ts, snrs);
  return result;
}

DecayResult integration_decay(const BellRunConfig& config, const std::vector<std::size_t>& sample_counts,
                              int realizations) {
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  DecayResult result;
  std::vector<double> ks, ns, zs;
  for (std::size_t K : sample_counts) {
    double sum_n = 0.0, sum_z = 0.0;
    for (int rep = 0; rep < realizations; ++rep) {
      BellRunConfig c = config;
      c.duration_t = static_cast<double>(K) / config.sample_rate;
      c.seed = derived_seed(config.seed, static_cast<std::uint64_t>(rep), kSaltRepeat);
      const RunOutput run = simulate_run(c);
      sum_n += run.N;
      sum_z += std::abs(run.Z);
    }
    DecayPoint p{K, sum_n / realizations, sum_z / realizations};
    result.points.push_back(p);
    ks.push_back(static_cast<double>(K));
    ns.push_back(p.mean_N);
    zs.push_back(p.mean_abs_Z);
  }
  result.exponent_N = log_log_slope(ks, ns);
  result.exponent_abs_Z = log_log_slope(ks, zs);
  return result;
}

}  // namespace yigbell::belltest
