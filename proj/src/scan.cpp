#include "fracbou/scan.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracbou/kernels.hpp"
#include "fracbou/norms.hpp"
#include "fracbou/snapshot.hpp"

namespace fracbou::scan {

SpectralField random_band_field(GridPtr grid, std::uint64_t seed, double k_lo,
                                double k_hi, double l2_target) {
  if (!(k_lo >= 0.0 && k_hi > k_lo))
    throw std::invalid_argument("random_band_field needs 0 <= k_lo < k_hi");
  if (!(l2_target > 0.0))
    throw std::invalid_argument("random_band_field needs a positive target size");
  std::mt19937_64 rng(seed);
  std::vector<double> noise(grid->phys_size());
  for (auto& x : noise) x = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
  SpectralField f = SpectralField::from_physical(grid, noise);

  const std::size_t ms = grid->spec_size();
  const auto& kk = grid->kabs();
  std::vector<double> band(ms);
  for (std::size_t m = 1; m < ms; ++m)
    band[m] = (kk[m] >= k_lo && kk[m] < k_hi) ? 1.0 : 0.0;
  f = apply_table(f, band);

  const double size = l2_via_parseval(f);
  if (!(size > 0.0))
    throw std::invalid_argument("requested band contains no lattice modes");
  kernels::scale(f.spec_mut(), l2_target / size, 2 * ms);
  return f;
}

FlowState make_initial_state(const SolverConfig& cfg, const InitSpec& init) {
  cfg.validate();
  GridPtr grid = SpectralGrid::create(cfg.n, cfg.length);
  FlowState s(grid);
  if (init.kind == "taylor-green") {
    const int n = grid->n();
    const double h = grid->spacing();
    const double ks = grid->kscale();
    std::vector<double> w(grid->phys_size()), t(grid->phys_size());
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t i = std::size_t(i1) * n + i2;
        w[i] = init.amp_omega * std::sin(ks * i1 * h) * std::sin(ks * i2 * h);
        t[i] = init.amp_theta * std::cos(ks * i1 * h);
      }
    s.omega = SpectralField::from_physical(grid, w);
    s.theta = SpectralField::from_physical(grid, t);
  } else if (init.kind == "random-band") {
    if (!(init.band_lo < init.band_hi))
      throw std::invalid_argument("init band is empty");
    s.omega = random_band_field(grid, init.seed, init.band_lo, init.band_hi,
                                std::fabs(init.amp_omega));
    s.theta = random_band_field(grid, init.seed + 0x9e3779b97f4a7c15ull, init.band_lo,
                                init.band_hi, std::fabs(init.amp_theta));
  } else if (init.kind == "file") {
    if (init.omega_file.empty() || init.theta_file.empty())
      throw std::invalid_argument("file init needs omega_file and theta_file");
    s.omega = load_field(grid, init.omega_file);
    s.theta = load_field(grid, init.theta_file);
  } else {
    throw std::invalid_argument("unknown init kind: " + init.kind);
  }
  return s;
}

BernsteinSweep bernstein_sweep(GridPtr grid, const lp::DyadicFamily& fam, double alpha,
                               int trials, std::uint64_t seed0) {
  if (trials < 1) throw std::invalid_argument("bernstein_sweep needs trials >= 1");
  BernsteinSweep sweep;
  sweep.bracket_lo = std::pow(2.0, -alpha);
  sweep.bracket_hi = std::pow(2.0, alpha);
  for (int i = 0; i < trials; ++i) {
    const int j = 1 + i % fam.j_max();
    const double lo = std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    auto f = random_band_field(grid, seed0 + std::uint64_t(i), lo * grid->kscale(),
                               hi * grid->kscale(), 1.0);
    auto rep = lp::bernstein_check(f, fam, j, alpha, 2.0, 2.0);
    sweep.trials.push_back({seed0 + std::uint64_t(i), j, rep.low_ratio, rep.high_ratio,
                            rep.low_in_bracket});
    if (!rep.low_in_bracket) ++sweep.failures;
  }
  return sweep;
}

CommutatorSweep commutator_sweep(GridPtr grid, const lp::DyadicFamily& fam,
                                 const std::vector<double>& alphas, int seeds,
                                 std::uint64_t seed0, int k_min, int k_max,
                                 double tol) {
  if (seeds < 1) throw std::invalid_argument("commutator_sweep needs seeds >= 1");
  CommutatorSweep sweep;
  const double band_hi = 16.0 * grid->kscale();
  for (double alpha : alphas) {
    for (int i = 0; i < seeds; ++i) {
      const std::uint64_t s = seed0 + std::uint64_t(i);
      auto gfield = random_band_field(grid, s, grid->kscale(), band_hi, 1.0);
      auto theta = random_band_field(grid, s + 0x5851f42d4c957f2dull, grid->kscale(),
                                     band_hi, 1.0);
      auto psi = random_band_field(grid, s + 0xda942042e4dd58b5ull, grid->kscale(),
                                   band_hi, 1.0);
      auto u_g = biot_savart(gfield);
      auto u_t = biot_savart(lambda_d1(theta, -alpha));
      CommutatorCase c{s, alpha,
                       lp::commutator_rate_scan(u_g, u_t, theta, psi, alpha, k_min,
                                                k_max, fam, 2.0, tol)};
      if (!c.scan.pass_g || !c.scan.pass_t) ++sweep.failures;
      sweep.cases.push_back(std::move(c));
    }
  }
  return sweep;
}

}  // namespace fracbou::scan
