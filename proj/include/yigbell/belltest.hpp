#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace yigbell::belltest {

using Complex = std::complex<double>;

enum class StateKind { PhiTypeI, PsiTypeII, SagnacTypeII };

/// Two-photon polarization state. Linear polarization angles are measured from
/// H, so <a|H> = cos a and <a|V> = sin a.
///   PhiTypeI(delta):     (|V_s V_i> + e^{i delta} |H_s H_i>)/sqrt2
///   PsiTypeII(theta):    (|H_s V_i> + e^{i theta} |V_s H_i>)/sqrt2
///   SagnacTypeII(theta): same polarization state as PsiTypeII; the two
///                        counter-propagating modes are not resolved by the receiver.
struct BellState {
  StateKind selector = StateKind::PhiTypeI;
  double phase = 0.0;

  struct Term {
    Complex coefficient;
    double signal_angle;  // 0 = H, pi/2 = V
    double idler_angle;
  };

  std::array<Term, 2> terms() const;
  std::string description() const;
  /// <a|<b|psi>.
  Complex projection_amplitude(double a, double b) const;
  double joint_probability(double a, double b) const { return std::norm(projection_amplitude(a, b)); }

  static BellState phi(double delta = 0.0) { return {StateKind::PhiTypeI, delta}; }
  static BellState psi(double theta = 0.0) { return {StateKind::PsiTypeII, theta}; }
  static BellState sagnac(double theta = 0.0) { return {StateKind::SagnacTypeII, theta}; }
};

/// Where the pair amplitudes come from.
///   Quantum: projection amplitudes of the entangled state.
///   LocalHiddenVariable: shared hidden polarization lambda, Malus-law fields
///     cos(a - lambda), cos(b - lambda).
///   IndependentHiddenVariable: each side has its own lambda (uncorrelated,
///     fully mixed control).
enum class SourceModel { Quantum, LocalHiddenVariable, IndependentHiddenVariable };

enum class ChannelModel { SingleChannel, TwinChannel };

/// Polarization analyzer; an empty angle means the analyzer is removed and the
/// channel is read by a dual-polarization receiver.
struct Analyzer {
  std::optional<double> angle;

  static Analyzer at(double a) { return {a}; }
  static Analyzer removed() { return {}; }
  bool is_removed() const { return !angle.has_value(); }
};

/// a, a', b, b' in radians.
struct BellAngles {
  double a = 0.0;
  double a_prime = 0.7853981633974483;   // 45 deg
  double b = 0.39269908169872414;        // 22.5 deg
  double b_prime = 1.1780972450961724;   // 67.5 deg
};

struct BellRunConfig {
  BellState state;
  SourceModel source = SourceModel::Quantum;
  double pair_rate = 1e5;             // pairs/s
  double pair_amplitude_A = 1.0;      // field units
  double thermal_noise_power = 0.0;   // field units^2 per channel (receiver F k T0 B)
  double amplified_thermal_power = 0.0;  // nbar Ps/L, random-phase component
  Analyzer analyzer_a = Analyzer::at(0.0);
  Analyzer analyzer_b = Analyzer::at(0.0);
  double sample_rate = 2e5;  // Hz, Nyquist 2B
  double duration_t = 1.0;   // s
  std::uint64_t seed = 1;
  ChannelModel channel_model = ChannelModel::TwinChannel;
  double pump_phase = 0.0;   // rad
  BellAngles angles;
  /// N = mean over blocks of |Z_block|^2; 1 block gives N = |Z|^2. Hidden
  /// variables of the LHV sources are held constant within a block.
  int coherence_blocks = 1;
  /// Independently seeded sub-runs: unit of parallel work and of bootstrap resampling.
  int subruns = 16;
  int bootstrap_resamples = 200;
  int threads = 1;

  void validate() const;
  std::size_t sample_count() const;
  double pair_probability() const { return pair_rate / sample_rate; }
};

/// Counter-based stream seeding: stream `index` of a given seed.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0);

/// One down-converted pair seen by the two channels.
struct PairFields {
  Complex signal;  // channel A field before noise
  Complex idler;   // channel B field before noise
  double phase_s = 0.0;
  double phase_i = 0.0;
};

/// Draws a pair with a common random epoch (phase_s + phase_i = pump_phase)
/// and splits the joint projection amplitude over the two channels by sampling
/// one term of the state: E[signal * idler] = A^2 <a|<b|psi> e^{j pump_phase},
/// while E|signal|^2 does not depend on b.
PairFields sample_pair_event(const BellState& state, double analyzer_a, double analyzer_b,
                             double amplitude, double pump_phase, std::mt19937_64& rng);

struct RunOutput {
  Complex Z{0.0, 0.0};  // coherent integral of the primary integrator
  double N = 0.0;       // coincidence analogue (summed over dual-polarization integrators)
  std::size_t samples = 0;
  double channel_a_power = 0.0;  // mean |u|^2 on the primary channel A receiver
  double channel_b_power = 0.0;
  int integrators = 1;
  int coherence_blocks = 1;
  /// Per sub-run, per integrator.
  std::vector<std::vector<Complex>> subrun_sum_z;
  std::vector<std::vector<double>> subrun_block_power;
  std::vector<std::size_t> subrun_samples;
  std::vector<int> subrun_blocks;
  /// Cumulative (samples, Z) checkpoints of the primary integrator.
  std::vector<std::pair<std::size_t, Complex>> trajectory;

  /// N recomputed from a multiset of sub-run indices (bootstrap replicate).
  double resampled_N(const std::vector<std::size_t>& subrun_indices) const;
  /// Mean of the primary integrator over sub-run r.
  Complex subrun_mean(std::size_t r) const;
};

/// Mixer-1 (u v), mixer-2 (times e^{-j pump_phase}) and coherent integration.
RunOutput simulate_run(const BellRunConfig& config);

/// simulate_run with the shared-lambda Malus source.
RunOutput lhv_oracle(const BellRunConfig& config);

// ---- statistics -------------------------------------------------------------

/// N at (a,b), (a,b_perp), (a_perp,b), (a_perp,b_perp).
struct SettingCounts {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
};

/// (N_ab + N_a'b' - N_ab' - N_a'b) / sum.
double correlation(const SettingCounts& counts);

/// E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp);

/// Settings order: (a,b), (a,b'), (a',b), (a',b').
double chsh_statistic(const std::array<SettingCounts, 4>& settings);

struct SingleChannelCounts {
  double ab = 0.0, abp = 0.0, apb = 0.0, apbp = 0.0;
  double ap_removed = 0.0;  // (a', inf)
  double removed_b = 0.0;   // (inf, b)
  double removed_removed = 0.0;
};

/// [N(a,b) - N(a,b') + N(a',b) + N(a',b') - N(a',inf) - N(inf,b)] / N(inf,inf); <= 0 classically.
double single_channel_statistic(const SingleChannelCounts& counts);

struct SettingRecord {
  std::string label;
  std::optional<double> a;  // rad, empty = removed
  std::optional<double> b;
  double N = 0.0;
};

struct CorrelationRecord {
  double a = 0.0, b = 0.0;
  double E = 0.0;
};

struct BellRunResult {
  ChannelModel channel_model = ChannelModel::TwinChannel;
  std::vector<SettingRecord> N_values;
  std::vector<CorrelationRecord> E_values;  // twin channel only
  double S = 0.0;
  double S_stderr = 0.0;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
};

/// 16 runs at the Bell angles and their orthogonal complements, CHSH S with a
/// paired bootstrap over sub-runs. All settings share the seed (common random numbers).
BellRunResult run_chsh(const BellRunConfig& config);

/// 7 runs for the removed-analyzer single-channel statistic.
BellRunResult run_single_channel(const BellRunConfig& config);

/// Dispatches on config.channel_model.
BellRunResult run_bell_test(const BellRunConfig& config);

// ---- integration-law experiments --------------------------------------------

struct ScalingPoint {
  double t = 0.0;
  double snr = 0.0;
};

struct ScalingResult {
  bool noise_free = false;
  double exponent = 0.0;  // slope of log(amplitude SNR) vs log(t)
  std::vector<ScalingPoint> points;
};

/// Empirical amplitude SNR |Z| / stderr(Z over sub-runs) per integration time,
/// averaged over `repeats` seeds, with its log-log slope.
ScalingResult snr_scaling_experiment(const BellRunConfig& config, const std::vector<double>& t_grid,
                                     int repeats = 1);

struct DecayPoint {
  std::size_t samples = 0;
  double mean_N = 0.0;
  double mean_abs_Z = 0.0;
};

struct DecayResult {
  double exponent_N = 0.0;      // slope of log(mean N) vs log(K)
  double exponent_abs_Z = 0.0;  // slope of log(mean |Z|) vs log(K)
  std::vector<DecayPoint> points;
};

/// Noise-only (or any) decay of the integrated value with sample count.
DecayResult integration_decay(const BellRunConfig& config, const std::vector<std::size_t>& sample_counts,
                              int realizations);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace yigbell::belltest
