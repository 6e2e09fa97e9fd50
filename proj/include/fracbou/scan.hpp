#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fracbou/lp.hpp"
#include "fracbou/solver.hpp"

// Reproducible random field synthesis plus the sweep drivers behind the
// verification suites: Bernstein-ratio trials over random annulus data and
// commutator decay-rate scans over random flows.

namespace fracbou::scan {

// white noise in physical space pushed through a sharp band-pass onto
// k_lo <= |k| < k_hi, mean removed, rescaled to the requested L2 size.
// Identical seeds give identical fields on a given build.
SpectralField random_band_field(GridPtr grid, std::uint64_t seed, double k_lo,
                                double k_hi, double l2_target);

struct InitSpec {
  std::string kind = "taylor-green";  // taylor-green | random-band | file
  std::uint64_t seed = 1;
  double band_lo = 1.0, band_hi = 8.0;
  double amp_omega = 2.0, amp_theta = 1.0;
  std::string omega_file, theta_file;
};

// taylor-green: omega = amp_omega sin x1 sin x2, theta = amp_theta cos x1
// (scaled to the domain length); random-band: two independent draws;
// file: snapshot pair loaded onto the solver grid
FlowState make_initial_state(const SolverConfig& cfg, const InitSpec& init);

struct BernsteinTrial {
  std::uint64_t seed;
  int j;
  double low_ratio, high_ratio;
  bool in_bracket;
};

struct BernsteinSweep {
  std::vector<BernsteinTrial> trials;
  int failures = 0;
  double bracket_lo = 0, bracket_hi = 0;
};

// trials random fields, each projected on a cycling resolved annulus;
// p = q = 2 so the bracket is sharp
BernsteinSweep bernstein_sweep(GridPtr grid, const lp::DyadicFamily& fam, double alpha,
                               int trials, std::uint64_t seed0);

struct CommutatorCase {
  std::uint64_t seed;
  double alpha;
  lp::CommutatorScan scan;
};

struct CommutatorSweep {
  std::vector<CommutatorCase> cases;
  int failures = 0;
};

// one scan per (seed, alpha): velocities induced by a random combination
// field and by the smoothed random temperature, commuted against further
// independent draws
CommutatorSweep commutator_sweep(GridPtr grid, const lp::DyadicFamily& fam,
                                 const std::vector<double>& alphas, int seeds,
                                 std::uint64_t seed0, int k_min, int k_max,
                                 double tol = 0.15);

}  // namespace fracbou::scan
