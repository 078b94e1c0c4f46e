#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <vector>

#include "yigbell/ferrite.hpp"
#include "yigbell/spdc.hpp"

namespace yigbell::phasematch {

using ferrite::Coupling;

/// Refractive index of a leg given its angular frequency, its propagation
/// angle to the bias field and its coupling.
using IndexModel =
    std::function<ferrite::RefractiveIndex(double omega, double theta_to_bias, Coupling coupling)>;

/// Oblique Polder dispersion of a biased ferrite.
IndexModel ferrite_index_model(const ferrite::FerriteMaterial& mat, const ferrite::BiasState& bias);

/// Lossless index depending only on the coupling.
IndexModel constant_index_model(double n_strong, double n_weak);

struct PumpSpec {
  double omega_p = 0.0;
  Coupling coupling = Coupling::Weak;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
};

/// Planar search problem. The bias field lies along +z and the pump, signal and
/// idler are coplanar with it; the signal leaves at +theta_s from the pump and
/// the idler at -theta_i on the other side.
struct MatchProblem {
  IndexModel index;
  PumpSpec pump;
  double theta_max = 0.5;   // rad
  double omega_min = 0.0;   // rad/s; signal spans [omega_min, omega_p - omega_min]
  spdc::Interaction interaction = spdc::Interaction::TypeI;
  int n_theta = 101;
  int n_omega = 101;
  double refine_tol = 1e-6;         // rad/m
  double interaction_length = 3e-3;  // m, for the sinc^2 penalty
  int refine_candidates = 5;
  int threads = 1;

  void validate() const;
  double pump_angle_to_bias() const;
};

/// Fixed mode table. Type I: signal and idler share the coupling orthogonal to
/// the pump's. Type II: signal strong, idler weak.
struct LegCouplings {
  Coupling signal;
  Coupling idler;
};
LegCouplings leg_couplings(Coupling pump, spdc::Interaction interaction);

struct MismatchPoint {
  double theta_s = 0.0, theta_i = 0.0;
  double omega_s = 0.0, omega_i = 0.0;
  double delta_k = 0.0;  // |longitudinal residual|, rad/m
  bool feasible = false;
};

/// One grid point: idler from energy conservation, idler angle from the
/// transverse balance k_s sin(theta_s) = k_i sin(theta_i).
MismatchPoint evaluate_mismatch(const MatchProblem& problem, double theta_s, double omega_s);

/// Row-major (theta rows, omega columns) sampled landscape.
struct Landscape {
  std::vector<double> theta_axis;
  std::vector<double> omega_axis;
  std::vector<MismatchPoint> points;

  const MismatchPoint& at(std::size_t i_theta, std::size_t j_omega) const {
    return points[i_theta * omega_axis.size() + j_omega];
  }
};

Landscape scan_mismatch(const MatchProblem& problem);

struct MatchResult {
  MismatchPoint best;
  MismatchPoint coarse_best;
  double penalty_sinc2 = 0.0;
  Landscape landscape;
  bool converged = false;
  int rounds = 0;
};

/// Coarse scan, then coordinate-wise golden-section refinement around the best
/// `refine_candidates` feasible cells.
MatchResult optimize_phase_match(const MatchProblem& problem);

/// sinc^2(|dk| l / 2).
double sinc2_penalty(double delta_k, double l);

/// CSV: theta_s,omega_s,delta_k,feasible.
void write_landscape_csv(std::ostream& os, const Landscape& landscape);

}  // namespace yigbell::phasematch
