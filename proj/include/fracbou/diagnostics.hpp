#pragma once
#include <string>
#include <vector>

#include "fracbou/lp.hpp"
#include "fracbou/solver.hpp"

// Running monitor for the a-priori structure of the flow: the maximum
// principle and L2 energy balance of theta, the linear-in-time growth bound
// on the velocity, and boundedness of the combination G in L2, L6, a
// negative-index Besov norm, and the Lipschitz size of its induced velocity.
// Accumulated integrals use the trapezoid rule across observe() calls, so
// the run loop should observe every step; full records with the more
// expensive norms land at the sampling cadence.

namespace fracbou {

struct DiagnosticRecord {
  double t = 0;
  double theta_l2 = 0, theta_l4 = 0, theta_linf = 0;
  double u_l2 = 0;
  double omega_l2 = 0;
  double g_l2 = 0, g_l6 = 0;
  double g_besov = 0;        // ||G|| in B^{3a-2}_{6,inf}; NaN when alpha <= 7/9
  double grad_ug_linf = 0;   // max over the four entries of grad u_G
  double theta_diss = 0;     // int_0^t ||Lambda^{beta/2} theta||^2
  double g_diss = 0;         // int_0^t ||Lambda^{alpha/2} G||^2
  double theta_energy_drift = 0;
};

struct CheckVerdict {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double worst_value = 0;
  double worst_t = 0;
  double tolerance = 0;
  std::string note;
};

class Monitor {
 public:
  explicit Monitor(const SolverConfig& cfg, int sample_every = 50);

  // feed once per step (run() sinks work directly); the first call pins the
  // reference norms of the initial data
  void observe(const FlowState& s);

  const std::vector<DiagnosticRecord>& records() const { return recs_; }

  // sampled-maximum slack: discretization floor plus the scheme-order term
  double max_principle_tolerance() const;
  // energy drift allowance at this dt, calibrated to 1e-4 at dt = 1e-3
  double energy_tolerance() const;

  CheckVerdict check_max_principle() const;
  CheckVerdict check_theta_energy() const;
  CheckVerdict check_velocity_growth() const;
  CheckVerdict check_g_l2() const;
  CheckVerdict check_g_l6_growth() const;
  CheckVerdict check_g_besov_lipschitz() const;
  std::vector<CheckVerdict> all_checks() const;

 private:
  DiagnosticRecord make_record(const FlowState& s) const;
  double u_l2_of(const SpectralField& omega) const;

  SolverConfig cfg_;
  int sample_every_;
  GridPtr grid_;
  std::unique_ptr<lp::DyadicFamily> fam_;
  std::vector<DiagnosticRecord> recs_;

  bool primed_ = false;
  double theta0_l2_sq_ = 0, theta0_l2_ = 0, u0_l2_ = 0;
  double prev_t_ = 0, prev_itheta_ = 0, prev_ig_ = 0;
  double acc_theta_ = 0, acc_g_ = 0;
};

}  // namespace fracbou
