#include <doctest.h>

#include <cmath>
#include <random>

#include "yigbell/constants.hpp"
#include "yigbell/errors.hpp"
#include "yigbell/belltest.hpp"
#include "yigbell/spdc.hpp"

using namespace yigbell;
using namespace yigbell::belltest;

namespace {

BellRunConfig ideal() {
  BellRunConfig c;
  c.state = BellState::phi(0.0);
  c.pair_rate = 1e5;
  c.sample_rate = 2e5;
  c.duration_t = 1.0;
  return c;
}

BellRunConfig lhv(std::uint64_t seed = 1) {
  BellRunConfig c = ideal();
  c.source = SourceModel::LocalHiddenVariable;
  c.coherence_blocks = 1600;
  c.seed = seed;
  return c;
}

BellRunConfig noise_only() {
  BellRunConfig c;
  c.pair_rate = 0.0;
  c.thermal_noise_power = 1.0;
  c.sample_rate = 2e5;
  return c;
}

bool same_result(const BellRunResult& a, const BellRunResult& b) {
  if (a.S != b.S || a.S_stderr != b.S_stderr || a.N_values.size() != b.N_values.size()) return false;
  for (std::size_t i = 0; i < a.N_values.size(); ++i)
    if (a.N_values[i].N != b.N_values[i].N || a.N_values[i].label != b.N_values[i].label) return false;
  return true;
}

}  // namespace

TEST_CASE("state projections") {
  const BellState phi = BellState::phi(0.0);
  CHECK(phi.joint_probability(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi.joint_probability(0.0, kPi / 4) == doctest::Approx(0.25).epsilon(1e-15));
  for (double a : {0.0, 0.3, 1.1})
    for (double b : {0.0, 0.7, 2.0}) {
      CHECK(phi.joint_probability(a, b) == doctest::Approx(0.5 * std::cos(a - b) * std::cos(a - b)).epsilon(1e-12));
      // Marginal: sum over b and b + pi/2 is one half.
      CHECK(phi.joint_probability(a, b) + phi.joint_probability(a, b + kPi / 2) == doctest::Approx(0.5).epsilon(1e-12));
    }
  const BellState psi = BellState::psi(0.0);
  CHECK(psi.joint_probability(0.0, kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(psi.joint_probability(0.0, 0.0) < 1e-30);
  CHECK(BellState::sagnac(0.4).projection_amplitude(0.2, 1.0) == BellState::psi(0.4).projection_amplitude(0.2, 1.0));
  const BellState phi_pi = BellState::phi(kPi);
  CHECK(phi_pi.joint_probability(0.0, kPi / 2) < 1e-30);
  CHECK(phi_pi.joint_probability(kPi / 4, -kPi / 4) == doctest::Approx(0.5).epsilon(1e-12));
  for (auto s : {phi, psi, BellState::sagnac(0.1)}) {
    double norm = 0.0;
    for (const auto& t : s.terms()) norm += std::norm(t.coefficient);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(!s.description().empty());
  }
}

TEST_CASE("pair events close the phase and carry the projection amplitude") {
  std::mt19937_64 rng(5);
  const BellState phi = BellState::phi(0.0);
  const double pump = 0.9, a = 0.2, b = 0.5, A = 1.5;
  Complex mean{0.0, 0.0};
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const PairFields p = sample_pair_event(phi, a, b, A, pump, rng);
    CHECK(std::abs(spdc::phase_sum_residual(pump, p.phase_s, p.phase_i)) < 1e-12);
    mean += p.signal * p.idler;
  }
  mean /= static_cast<double>(n);
  const Complex want = A * A * phi.projection_amplitude(a, b) * std::polar(1.0, pump);
  CHECK(std::abs(mean - want) < 0.02 * A * A);
}

TEST_CASE("stream seeding") {
  auto a = make_stream(1, 0), b = make_stream(1, 0), c = make_stream(1, 1), d = make_stream(2, 0), e = make_stream(1, 0, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  CHECK(x != e());
}

TEST_CASE("no pairs, no noise gives zero") {
  BellRunConfig c = ideal();
  c.pair_rate = 0.0;
  const RunOutput r = simulate_run(c);
  CHECK(r.N == 0.0);
  CHECK(r.Z == Complex(0.0, 0.0));
}

TEST_CASE("aligned analyzers converge to the expected mean") {
  BellRunConfig c = ideal();
  c.duration_t = 0.5;  // 1e5 samples
  const RunOutput r = simulate_run(c);
  CHECK(r.samples == 100000);
  const double expected = std::norm(c.pair_probability() * BellState::phi(0).projection_amplitude(0, 0));
  CHECK(std::abs(r.N - expected) / expected < 0.02);
  CHECK(std::abs(std::arg(r.Z)) < 0.05);
}

TEST_CASE("noise averages out") {
  const DecayResult d = integration_decay(noise_only(), {1000, 10000, 100000, 1000000}, 32);
  CHECK(d.exponent_N == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(d.exponent_abs_Z == doctest::Approx(-0.5).epsilon(0.1));
  CHECK(std::abs(d.exponent_abs_Z + 0.5) < 0.05);
  CHECK(std::abs(d.exponent_N + 1.0) < 0.1);
  // N ~ (noise power)^2 / K.
  for (const auto& p : d.points) CHECK(p.mean_N * p.samples == doctest::Approx(1.0).epsilon(0.35));
}

TEST_CASE("CHSH: ideal quantum model violates") {
  const BellRunResult r = run_chsh(ideal());
  CHECK(r.N_values.size() == 16);
  CHECK(r.E_values.size() == 4);
  CHECK(std::abs(r.S - 2 * std::sqrt(2.0)) < 0.05);
  CHECK(r.S_stderr > 0.0);
  CHECK((r.S - 2.0) / r.S_stderr > 5.0);
  for (const auto& e : r.E_values) {
    CHECK(e.E == doctest::Approx(std::cos(2 * (e.a - e.b))).epsilon(0.05));
    CHECK(std::abs(e.E) <= 1 + 3 * r.S_stderr);
  }
  for (const auto& n : r.N_values) CHECK(n.N >= 0.0);
}

TEST_CASE("CHSH: hidden-variable oracle stays classical") {
  const BellRunResult r = run_chsh(lhv());
  CHECK(std::abs(r.S - std::sqrt(2.0)) < 0.05);
  for (const auto& e : r.E_values) CHECK(std::abs(e.E - 0.5 * std::cos(2 * (e.a - e.b))) < 0.02);
  // lhv_oracle forces the shared-lambda source.
  BellRunConfig q = lhv();
  q.source = SourceModel::Quantum;
  q.analyzer_a = Analyzer::at(0.3);
  q.analyzer_b = Analyzer::at(0.3);
  BellRunConfig l = lhv();
  l.analyzer_a = Analyzer::at(0.3);
  l.analyzer_b = Analyzer::at(0.3);
  CHECK(lhv_oracle(q).N == simulate_run(l).N);
}

TEST_CASE("hidden-variable correlation at equal angles is one half") {
  BellRunConfig c = lhv();
  const double x = 0.4;
  SettingCounts s;
  for (int q = 0; q < 4; ++q) {
    c.analyzer_a = Analyzer::at(x + (q & 2 ? kPi / 2 : 0.0));
    c.analyzer_b = Analyzer::at(x + (q & 1 ? kPi / 2 : 0.0));
    const double n = simulate_run(c).N;
    (q == 0 ? s.pp : q == 1 ? s.pm : q == 2 ? s.mp : s.mm) = n;
  }
  CHECK(std::abs(correlation(s) - 0.5) < 0.02);
}

TEST_CASE("CHSH: hidden-variable oracle at random angles over many seeds") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    BellRunConfig c = lhv(seed);
    c.duration_t = 0.25;
    c.angles = {ang(rng), ang(rng), ang(rng), ang(rng)};
    const BellRunResult r = run_chsh(c);
    CHECK(r.S <= 2.0 + 3.0 * r.S_stderr);
  }
}

TEST_CASE("CHSH: uncorrelated source gives zero") {
  BellRunConfig c = ideal();
  c.source = SourceModel::IndependentHiddenVariable;
  c.coherence_blocks = 1600;
  const BellRunResult r = run_chsh(c);
  CHECK(std::abs(r.S) <= std::max(3.0 * r.S_stderr, 0.05));
}

TEST_CASE("single-channel statistic") {
  BellRunConfig c = ideal();
  c.channel_model = ChannelModel::SingleChannel;
  const BellRunResult r = run_bell_test(c);
  CHECK(r.N_values.size() == 7);
  CHECK(r.E_values.empty());
  CHECK(r.S == doctest::Approx((std::sqrt(2.0) - 1) / 2).epsilon(0.1));
  CHECK(std::abs(r.S - 0.207) < 0.02);

  BellRunConfig l = lhv();
  l.channel_model = ChannelModel::SingleChannel;
  const BellRunResult rl = run_bell_test(l);
  CHECK(rl.S <= 3.0 * rl.S_stderr + 1e-12);
}

TEST_CASE("statistics helpers") {
  CHECK(correlation({1, 0, 0, 1}) == 1.0);
  CHECK(correlation({0, 1, 1, 0}) == -1.0);
  CHECK(correlation({1, 1, 1, 1}) == 0.0);
  CHECK_THROWS_AS(correlation({0, 0, 0, 0}), NumericalError);
  CHECK(chsh_combination(0.5, -0.5, 0.5, 0.5) == 2.0);
  const double r = std::sqrt(0.5);
  const double p = (1 + r) / 2, m = (1 - r) / 2;
  std::array<SettingCounts, 4> s{{{p, m, m, p}, {m, p, p, m}, {p, m, m, p}, {p, m, m, p}}};
  CHECK(chsh_statistic(s) == doctest::Approx(2 * std::sqrt(2.0)));
  // Ideal quantum counts at the Bell angles.
  auto n = [](double a, double b) { return 0.25 * (1 + std::cos(2 * (a - b))); };
  const BellAngles g;
  const SingleChannelCounts sc{n(g.a, g.b), n(g.a, g.b_prime), n(g.a_prime, g.b), n(g.a_prime, g.b_prime), 0.5, 0.5, 1.0};
  CHECK(single_channel_statistic(sc) == doctest::Approx((std::sqrt(2.0) - 1) / 2).epsilon(1e-12));
  CHECK_THROWS_AS(single_channel_statistic({1, 1, 1, 1, 1, 1, 0}), NumericalError);
}

TEST_CASE("no signalling from the far analyzer") {
  BellRunConfig c = ideal();
  c.duration_t = 0.5;
  c.analyzer_a = Analyzer::at(0.3);
  c.analyzer_b = Analyzer::at(0.0);
  const RunOutput r0 = simulate_run(c);
  c.analyzer_b = Analyzer::at(1.0);
  c.seed = 99;
  const RunOutput r1 = simulate_run(c);
  // |u|^2 per sample is bounded by 2 A^2, so its standard error is at most 2 / sqrt(K).
  const double sigma = 2.0 / std::sqrt(static_cast<double>(r0.samples));
  CHECK(std::abs(r0.channel_a_power - r1.channel_a_power) < 3 * sigma * std::sqrt(2.0));
  CHECK(r0.channel_a_power == doctest::Approx(0.25).epsilon(0.02));  // p_pair * 1/2
}

TEST_CASE("rotational invariance") {
  BellRunConfig c = ideal();
  const BellRunResult r0 = run_chsh(c);
  const double off = 0.3;
  c.angles = {c.angles.a + off, c.angles.a_prime + off, c.angles.b + off, c.angles.b_prime + off};
  const BellRunResult r1 = run_chsh(c);
  CHECK(std::abs(r1.S - r0.S) < 3 * std::hypot(r0.S_stderr, r1.S_stderr));
}

TEST_CASE("determinism and thread independence") {
  BellRunConfig c = ideal();
  c.duration_t = 0.2;
  c.thermal_noise_power = 0.3;
  const BellRunResult a = run_chsh(c);
  const BellRunResult b = run_chsh(c);
  c.threads = 8;
  const BellRunResult t8 = run_chsh(c);
  CHECK(same_result(a, b));
  CHECK(same_result(a, t8));
  c.seed = 2;
  const BellRunResult other = run_chsh(c);
  CHECK(other.S != a.S);
  CHECK(std::abs(other.S - a.S) < 5 * std::hypot(a.S_stderr, other.S_stderr));

  BellRunConfig l = lhv();
  l.duration_t = 0.2;
  l.channel_model = ChannelModel::SingleChannel;
  const BellRunResult la = run_bell_test(l);
  l.threads = 8;
  CHECK(same_result(la, run_bell_test(l)));
}

TEST_CASE("trajectory ends at Z") {
  BellRunConfig c = ideal();
  c.duration_t = 0.1;
  const RunOutput r = simulate_run(c);
  REQUIRE(!r.trajectory.empty());
  CHECK(r.trajectory.back().first == r.samples);
  CHECK(std::abs(r.trajectory.back().second - r.Z) < 1e-12);
  CHECK(r.trajectory.size() == static_cast<std::size_t>(8 * c.subruns));
}

TEST_CASE("amplitude SNR grows as the square root of time") {
  BellRunConfig c = ideal();
  c.thermal_noise_power = 1.0;
  const ScalingResult s = snr_scaling_experiment(c, {0.01, 0.0316, 0.1, 0.316, 1.0}, 16);
  CHECK(!s.noise_free);
  CHECK(std::abs(s.exponent - 0.5) < 0.05);
  CHECK(s.points.size() == 5);
}

TEST_CASE("doubling the sample rate improves SNR by sqrt 2") {
  BellRunConfig c = ideal();
  c.thermal_noise_power = 1.0;
  const ScalingResult base = snr_scaling_experiment(c, {0.05, 0.5}, 16);
  c.sample_rate *= 2;
  c.pair_rate *= 2;
  const ScalingResult fast = snr_scaling_experiment(c, {0.05, 0.5}, 16);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(fast.points[i].snr / base.points[i].snr == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("scaling experiment guards") {
  BellRunConfig c = ideal();
  const ScalingResult s = snr_scaling_experiment(c, {0.01, 0.1}, 1);
  CHECK(s.noise_free);
  CHECK(std::isnan(s.exponent));
  CHECK(std::isinf(s.points[0].snr));
  c.thermal_noise_power = 1.0;
  CHECK_THROWS_AS(snr_scaling_experiment(c, {1e-4, 1e-2}, 1), ConfigError);
  CHECK_THROWS_AS(snr_scaling_experiment(c, {0.1, 0.5}, 1), ConfigError);
  CHECK_THROWS_AS(snr_scaling_experiment(c, {0.1}, 1), ConfigError);
}

TEST_CASE("config validation") {
  BellRunConfig c = ideal();
  CHECK_NOTHROW(c.validate());
  BellRunConfig bad = c;
  bad.pair_rate = 3e5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.subruns = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.coherence_blocks = 24;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.duration_t = 1e-5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.thermal_noise_power = -1.0;
  CHECK_THROWS(bad.validate());
  CHECK(c.sample_count() == 200000);
  CHECK_THROWS_AS(log_log_slope({1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(log_log_slope({1.0, 2.0}, {1.0, 0.0}), NumericalError);
  CHECK(log_log_slope({1.0, 10.0, 100.0}, {1.0, 0.1, 0.01}) == doctest::Approx(-1.0));
}
