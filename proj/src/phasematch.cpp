#include "yigbell/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "yigbell/csv.hpp"
#include "yigbell/parallel.hpp"

namespace yigbell::phasematch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;
constexpr int kMaxRounds = 500;

struct Leg {
  double k = 0.0;
  bool ok = false;
};

Leg leg_wavenumber(const IndexModel& index, double omega, double theta_to_bias, Coupling c) {
  const ferrite::RefractiveIndex n = index(omega, theta_to_bias, c);
  if (!n.propagating()) return {};
  return {omega * n.real / Constants::light_speed_c, true};
}

// Minimise f over [lo, hi]; returns the best abscissa seen (including `start`).
template <typename F>
double golden_minimise(F&& f, double lo, double hi, double start, double& f_best) {
  double best_x = start;
  auto consider = [&](double x, double fx) {
    if (fx < f_best) {
      f_best = fx;
      best_x = x;
    }
  };
  if (!(hi > lo)) return best_x;
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  consider(lo, f(lo));
  consider(hi, f(hi));
  return best_x;
}

}  // namespace

IndexModel ferrite_index_model(const ferrite::FerriteMaterial& mat, const ferrite::BiasState& bias) {
  return [mat, bias](double omega, double theta, Coupling c) {
    return ferrite::refractive_index(mat, bias, omega, ferrite::PropagationMode::at_angle(theta, c));
  };
}

IndexModel constant_index_model(double n_strong, double n_weak) {
  return [n_strong, n_weak](double, double, Coupling c) {
    ferrite::RefractiveIndex n;
    n.real = c == Coupling::Strong ? n_strong : n_weak;
    n.squared = n.real * n.real;
    return n;
  };
}

void MatchProblem::validate() const {
  if (!index) throw ConfigError("phase-match problem has no index model");
  detail::require_positive(pump.omega_p, "pump omega");
  detail::require_positive(omega_min, "omega_min");
  if (!(pump.omega_p - omega_min > omega_min))
    throw ConfigError("signal frequency range is empty");
  if (!(theta_max >= 0.0 && theta_max < kPi / 2)) throw ConfigError("theta_max must lie in [0, pi/2)");
  if (n_theta < 2 || n_omega < 2) throw ConfigError("grid must be at least 2x2");
  detail::require_positive(refine_tol, "refine_tol");
  detail::require_positive(interaction_length, "interaction length");
  if (refine_candidates < 1) throw ConfigError("refine_candidates must be >= 1");
  if (!(pump.direction.norm() > 0.0)) throw ConfigError("pump direction must be nonzero");
}

double MatchProblem::pump_angle_to_bias() const {
  const Eigen::Vector3d d = pump.direction.normalized();
  return std::acos(std::clamp(d.z(), -1.0, 1.0));
}

LegCouplings leg_couplings(Coupling pump, spdc::Interaction interaction) {
  if (interaction == spdc::Interaction::TypeI) {
    const Coupling other = pump == Coupling::Strong ? Coupling::Weak : Coupling::Strong;
    return {other, other};
  }
  return {Coupling::Strong, Coupling::Weak};
}

MismatchPoint evaluate_mismatch(const MatchProblem& p, double theta_s, double omega_s) {
  MismatchPoint pt;
  pt.theta_s = theta_s;
  pt.omega_s = omega_s;
  pt.omega_i = p.pump.omega_p - omega_s;
  pt.delta_k = kInf;
  if (!(pt.omega_i > 0.0) || !(omega_s > 0.0)) return pt;

  const LegCouplings legs = leg_couplings(p.pump.coupling, p.interaction);
  const double theta_p = p.pump_angle_to_bias();
  const Leg kp = leg_wavenumber(p.index, p.pump.omega_p, theta_p, p.pump.coupling);
  const Leg ks = leg_wavenumber(p.index, omega_s, theta_p + theta_s, legs.signal);
  if (!kp.ok || !ks.ok) return pt;

  const double transverse = ks.k * std::sin(theta_s);
  double theta_i = 0.0;
  Leg ki;
  if (transverse == 0.0) {
    ki = leg_wavenumber(p.index, pt.omega_i, theta_p, legs.idler);
  } else {
    auto balance = [&](double th) {
      const Leg l = leg_wavenumber(p.index, pt.omega_i, theta_p - th, legs.idler);
      return l.ok ? l.k * std::sin(th) - transverse : std::numeric_limits<double>::quiet_NaN();
    };
    double lo = 0.0;
    double hi = kPi / 2;
    const double g_hi = balance(hi);
    if (!(g_hi >= 0.0)) return pt;  // no idler angle balances the signal
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g = balance(mid);
      if (std::isnan(g)) return pt;
      (g < 0.0 ? lo : hi) = mid;
    }
    theta_i = 0.5 * (lo + hi);
    ki = leg_wavenumber(p.index, pt.omega_i, theta_p - theta_i, legs.idler);
  }
  if (!ki.ok) return pt;
  pt.theta_i = theta_i;
  pt.delta_k = std::abs(kp.k - ks.k * std::cos(theta_s) - ki.k * std::cos(theta_i));
  pt.feasible = std::isfinite(pt.delta_k);
  return pt;
}

Landscape scan_mismatch(const MatchProblem& p) {
  p.validate();
  Landscape land;
  land.theta_axis.resize(p.n_theta);
  land.omega_axis.resize(p.n_omega);
  const double w_lo = p.omega_min;
  const double w_hi = p.pump.omega_p - p.omega_min;
  for (int i = 0; i < p.n_theta; ++i) land.theta_axis[i] = p.theta_max * i / (p.n_theta - 1);
  for (int j = 0; j < p.n_omega; ++j)
    land.omega_axis[j] = w_lo + (w_hi - w_lo) * j / (p.n_omega - 1);
  land.points.resize(static_cast<std::size_t>(p.n_theta) * p.n_omega);
  detail::parallel_for(static_cast<std::size_t>(p.n_theta), p.threads, [&](std::size_t i) {
    for (int j = 0; j < p.n_omega; ++j)
      land.points[i * p.n_omega + j] = evaluate_mismatch(p, land.theta_axis[i], land.omega_axis[j]);
  });
  return land;
}

double sinc2_penalty(double delta_k, double l) {
  const double x = 0.5 * delta_k * l;
  if (x == 0.0) return 1.0;
  const double s = std::sin(x) / x;
  return s * s;
}

MatchResult optimize_phase_match(const MatchProblem& p) {
  MatchResult result;
  result.landscape = scan_mismatch(p);
  const auto& pts = result.landscape.points;

  std::vector<std::size_t> order;
  for (std::size_t idx = 0; idx < pts.size(); ++idx)
    if (pts[idx].feasible) order.push_back(idx);
  if (order.empty()) {
    // Best-so-far: nothing feasible, report the first grid point.
    result.best = pts.front();
    result.coarse_best = pts.front();
    result.penalty_sinc2 = 0.0;
    result.converged = false;
    return result;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pts[a].delta_k < pts[b].delta_k; });
  result.coarse_best = pts[order.front()];

  const double d_theta = p.theta_max / (p.n_theta - 1);
  const double w_lo = p.omega_min;
  const double w_hi = p.pump.omega_p - p.omega_min;
  const double d_omega = (w_hi - w_lo) / (p.n_omega - 1);
  auto objective = [&](double th, double w) {
    const MismatchPoint m = evaluate_mismatch(p, th, w);
    return m.feasible ? m.delta_k : kInf;
  };

  const std::size_t n_candidates =
      std::min<std::size_t>(order.size(), static_cast<std::size_t>(p.refine_candidates));
  struct Refined {
    MismatchPoint point;
    bool converged = false;
    int rounds = 0;
  };
  std::vector<Refined> refined(n_candidates);
  detail::parallel_for(n_candidates, p.threads, [&](std::size_t c) {
    const MismatchPoint& seed = pts[order[c]];
    double th = seed.theta_s;
    double w = seed.omega_s;
    double best = seed.delta_k;
    Refined r;
    for (r.rounds = 1; r.rounds <= kMaxRounds; ++r.rounds) {
      const double previous = best;
      th = golden_minimise([&](double x) { return objective(x, w); },
                           std::max(0.0, th - d_theta), std::min(p.theta_max, th + d_theta), th,
                           best);
      w = golden_minimise([&](double x) { return objective(th, x); },
                          std::max(w_lo, w - d_omega), std::min(w_hi, w + d_omega), w, best);
      if (previous - best < p.refine_tol) {
        r.converged = true;
        break;
      }
    }
    r.rounds = std::min(r.rounds, kMaxRounds);
    r.point = evaluate_mismatch(p, th, w);
    if (!r.point.feasible || r.point.delta_k > seed.delta_k) r.point = seed;
    refined[c] = r;
  });

  std::size_t winner = 0;
  for (std::size_t c = 1; c < refined.size(); ++c)
    if (refined[c].point.delta_k < refined[winner].point.delta_k) winner = c;
  result.best = refined[winner].point;
  result.converged = refined[winner].converged;
  result.rounds = refined[winner].rounds;
  result.penalty_sinc2 = sinc2_penalty(result.best.delta_k, p.interaction_length);
  return result;
}

void write_landscape_csv(std::ostream& os, const Landscape& land) {
  os << "theta_s,omega_s,delta_k,feasible\n";
  for (std::size_t i = 0; i < land.theta_axis.size(); ++i) {
    for (std::size_t j = 0; j < land.omega_axis.size(); ++j) {
      const MismatchPoint& m = land.at(i, j);
      os << format_number(m.theta_s) << ',' << format_number(m.omega_s) << ','
         << (m.feasible ? format_number(m.delta_k) : std::string("nan")) << ','
         << (m.feasible ? 1 : 0) << '\n';
    }
  }
}

}  // namespace yigbell::phasematch
