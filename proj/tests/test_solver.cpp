#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "fracbou/multiplier.hpp"
#include "fracbou/norms.hpp"
#include "fracbou/scan.hpp"
#include "fracbou/solver.hpp"

using namespace fracbou;

namespace {

SpectralField pure_mode(GridPtr g, int row, int col, double coeff) {
  const int n = g->n();
  const int nh = n / 2 + 1;
  std::vector<std::complex<double>> spec(g->spec_size());
  spec[std::size_t(row) * nh + col] = coeff;
  // self conjugate columns store both half planes, so the mirror row carries
  // the conjugate coefficient explicitly
  if ((col == 0 || col == n / 2) && row > 0 && row != n / 2)
    spec[std::size_t(n - row) * nh + col] = std::conj(std::complex<double>(coeff));
  return SpectralField::from_spectral(std::move(g), spec);
}

double max_phys_diff(const SpectralField& a, const SpectralField& b) {
  const double* pa = a.phys();
  const double* pb = b.phys();
  double m = 0;
  for (std::size_t i = 0; i < a.grid().phys_size(); ++i)
    m = std::max(m, std::fabs(pa[i] - pb[i]));
  return m;
}

double state_gap(const FlowState& a, const FlowState& b) {
  return std::max(max_phys_diff(a.omega, b.omega), max_phys_diff(a.theta, b.theta));
}

SolverConfig base_config(int n) {
  SolverConfig cfg;
  cfg.n = n;
  cfg.alpha = 0.85;
  cfg.beta = 0.15;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  return cfg;
}

FlowState taylor_green_state(const SolverConfig& cfg) {
  scan::InitSpec init;
  return scan::make_initial_state(cfg, init);
}

}  // namespace

TEST_CASE("config validation rejects bad parameter combinations") {
  SolverConfig cfg = base_config(64);
  CHECK_NOTHROW(cfg.validate());

  SolverConfig bad = cfg;
  bad.n = 7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.alpha = 0.9;  // leaves alpha + beta off 1
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.require_critical = false;
  CHECK_NOTHROW(bad.validate());
  bad = cfg;
  bad.alpha = 1.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.nu = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.t_end = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scheme names round trip") {
  CHECK(scheme_from_name("ifrk2") == Scheme::ifrk2);
  CHECK(scheme_from_name("ifrk4") == Scheme::ifrk4);
  CHECK(std::string(scheme_name(Scheme::ifrk2)) == "ifrk2");
  CHECK(std::string(scheme_name(Scheme::ifrk4)) == "ifrk4");
  CHECK(scheme_order(Scheme::ifrk2) == 2);
  CHECK(scheme_order(Scheme::ifrk4) == 4);
  CHECK_THROWS_AS(scheme_from_name("euler"), std::invalid_argument);
}

TEST_CASE("linear flow decays each mode by its exact semigroup factor") {
  for (Scheme sch : {Scheme::ifrk2, Scheme::ifrk4}) {
    SolverConfig cfg = base_config(32);
    cfg.nonlinear = false;
    cfg.nu = 0.9;
    cfg.kappa = 1.1;
    cfg.dt = 1e-2;
    cfg.t_end = 1.0;
    cfg.scheme = sch;
    Stepper st(cfg);

    const double amp = 0.5 * 32.0 * 32.0;
    FlowState s(st.grid());
    s.omega = pure_mode(st.grid(), 3, 0, amp);  // cos(3 x1)
    s.theta = pure_mode(st.grid(), 0, 2, amp);  // cos(2 x2)
    FlowState out = st.run(std::move(s));

    const double fw = std::exp(-cfg.nu * std::pow(3.0, cfg.alpha) * cfg.t_end);
    const double ft = std::exp(-cfg.kappa * std::pow(2.0, cfg.beta) * cfg.t_end);
    auto refw = pure_mode(st.grid(), 3, 0, amp * fw);
    auto reft = pure_mode(st.grid(), 0, 2, amp * ft);
    CHECK(max_phys_diff(out.omega, refw) < 1e-13);
    CHECK(max_phys_diff(out.theta, reft) < 1e-13);
    CHECK(out.step == 100);
    CHECK(out.t == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("nonlinear self convergence matches the scheme order") {
  for (Scheme sch : {Scheme::ifrk2, Scheme::ifrk4}) {
    SolverConfig cfg = base_config(32);
    cfg.scheme = sch;
    cfg.t_end = 0.2;

    auto run_at = [&](double dt) {
      SolverConfig c = cfg;
      c.dt = dt;
      Stepper st(c);
      return st.run(taylor_green_state(c));
    };
    FlowState a = run_at(4e-3);
    FlowState b = run_at(2e-3);
    FlowState c = run_at(1e-3);
    const double e1 = state_gap(a, b);
    const double e2 = state_gap(b, c);
    const double p_est = std::log2(e1 / e2);
    INFO("scheme ", scheme_name(sch), " observed order ", p_est);
    CHECK(p_est > scheme_order(sch) - 0.2);
    CHECK(p_est < scheme_order(sch) + 0.8);
  }
}

TEST_CASE("identical runs give byte identical states") {
  SolverConfig cfg = base_config(32);
  cfg.t_end = 0.05;
  Stepper st1(cfg);
  Stepper st2(cfg);
  FlowState a = st1.run(taylor_green_state(cfg));
  FlowState b = st2.run(taylor_green_state(cfg));
  const std::size_t bytes = 2 * a.omega.grid().spec_size() * sizeof(double);
  CHECK(std::memcmp(a.omega.spec(), b.omega.spec(), bytes) == 0);
  CHECK(std::memcmp(a.theta.spec(), b.theta.spec(), bytes) == 0);
}

TEST_CASE("advection conserves the mean of both fields") {
  SolverConfig cfg = base_config(32);
  cfg.t_end = 0.05;
  Stepper st(cfg);
  FlowState s = taylor_green_state(cfg);
  {
    double* spec = s.theta.spec_mut();
    spec[0] = 0.3 * double(st.grid()->phys_size());  // mean offset 0.3
  }
  const double mean_scale = double(st.grid()->phys_size());
  FlowState out = st.run(std::move(s));
  CHECK(std::fabs(out.theta.spec()[0] / mean_scale - 0.3) < 1e-13);
  CHECK(std::fabs(out.omega.spec()[0] / mean_scale) < 1e-13);
}

TEST_CASE("velocity splits into the parts induced by g and by theta") {
  auto g = SpectralGrid::create(64);
  std::mt19937_64 rng(44);
  std::vector<double> vw(g->phys_size()), vt(g->phys_size());
  for (auto& x : vw) x = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
  for (auto& x : vt) x = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
  auto omega = SpectralField::from_physical(g, vw);
  auto theta = SpectralField::from_physical(g, vt);

  VelocitySplit vs = velocity_split(omega, theta, 0.85);
  CHECK(vs.mismatch < 1e-12);

  // the from_g part plus the from_theta part reassembles the total velocity
  double worst = 0;
  for (int comp = 0; comp < 2; ++comp) {
    const SpectralField& tot = comp ? vs.total.u2 : vs.total.u1;
    const SpectralField& pg = comp ? vs.from_g.u2 : vs.from_g.u1;
    const SpectralField& pt = comp ? vs.from_theta.u2 : vs.from_theta.u1;
    const double* a = tot.phys();
    const double* b = pg.phys();
    const double* c = pt.phys();
    for (std::size_t i = 0; i < g->phys_size(); ++i)
      worst = std::max(worst, std::fabs(a[i] - b[i] - c[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("g residual shrinks at second order in the sampling spacing") {
  SolverConfig cfg = base_config(32);
  cfg.scheme = Scheme::ifrk2;
  cfg.t_end = 0.12;

  auto residual_at = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    Stepper st(c);
    const long mid = std::lround(0.1 / dt);
    std::vector<FlowState> captured;
    st.run(taylor_green_state(c), [&](const FlowState& s) {
      if (s.step >= mid - 1 && s.step <= mid + 1) captured.push_back(s);
    });
    REQUIRE(captured.size() == 3);
    return g_residual(captured[0], captured[1], captured[2], c);
  };

  const double r1 = residual_at(2e-3);
  const double r2 = residual_at(1e-3);
  const double ratio = r1 / r2;
  INFO("residuals ", r1, " ", r2, " ratio ", ratio);
  CHECK(ratio > std::pow(2.0, 2.0 - 0.3));
  CHECK(ratio < std::pow(2.0, 2.0 + 0.3));
}

TEST_CASE("g residual needs equally spaced samples") {
  SolverConfig cfg = base_config(32);
  cfg.t_end = 0.01;
  Stepper st(cfg);
  std::vector<FlowState> all;
  st.run(taylor_green_state(cfg), [&](const FlowState& s) { all.push_back(s); });
  REQUIRE(all.size() >= 5);
  CHECK_THROWS_AS(g_residual(all[0], all[1], all[4], cfg), std::invalid_argument);
}

TEST_CASE("the stepper reports blow up instead of streaming NaNs") {
  SolverConfig cfg = base_config(32);
  cfg.dt = 1.0;
  cfg.t_end = 30.0;
  Stepper st(cfg);
  scan::InitSpec init;
  init.amp_omega = 80.0;
  init.amp_theta = 40.0;
  FlowState s = scan::make_initial_state(cfg, init);
  CHECK_THROWS_AS(st.run(std::move(s)), std::runtime_error);
}

TEST_CASE("cfl limit scales with the velocity size") {
  SolverConfig cfg = base_config(32);
  Stepper st(cfg);
  FlowState rest(st.grid());
  CHECK(std::isinf(st.cfl_limit(rest)));

  FlowState tg = taylor_green_state(cfg);
  const double lim = st.cfl_limit(tg);
  CHECK(lim > 0.0);
  CHECK(std::isfinite(lim));

  scan::InitSpec big;
  big.amp_omega = 20.0;
  FlowState fast = scan::make_initial_state(cfg, big);
  CHECK(st.cfl_limit(fast) < lim);
}

TEST_CASE("run rejects a state on a mismatched grid") {
  SolverConfig cfg = base_config(32);
  Stepper st(cfg);
  SolverConfig other = cfg;
  other.n = 64;
  FlowState s = taylor_green_state(other);
  CHECK_THROWS_AS(st.run(std::move(s)), std::invalid_argument);
}

TEST_CASE("compute_g subtracts the riesz-smoothed buoyancy part") {
  auto g = SpectralGrid::create(32);
  auto omega = pure_mode(g, 2, 0, 0.5 * 32.0 * 32.0);
  auto theta = pure_mode(g, 3, 0, 0.5 * 32.0 * 32.0);
  auto gg = compute_g(omega, theta, 0.85);

  // R_a theta for theta = cos(3 x1) is 3^{-a} d1 Lambda^{... } applied once:
  // lambda_d1(theta, -a) = -3^{1-a} sin(3 x1)
  std::vector<double> ref(g->phys_size());
  const int n = g->n();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double x1 = g->spacing() * i;
      ref[std::size_t(i) * n + k] =
          std::cos(2.0 * x1) + std::pow(3.0, 1.0 - 0.85) * std::sin(3.0 * x1);
    }
  const double* p = gg.phys();
  double worst = 0;
  for (std::size_t i = 0; i < g->phys_size(); ++i)
    worst = std::max(worst, std::fabs(p[i] - ref[i]));
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(compute_g(omega, theta, -0.2), std::domain_error);
}

TEST_CASE("random band initial states reproduce and respect the band") {
  SolverConfig cfg = base_config(64);
  scan::InitSpec init;
  init.kind = "random-band";
  init.seed = 99;
  init.band_lo = 2.0;
  init.band_hi = 6.0;
  FlowState a = scan::make_initial_state(cfg, init);
  FlowState b = scan::make_initial_state(cfg, init);
  const std::size_t bytes = 2 * a.omega.grid().spec_size() * sizeof(double);
  CHECK(std::memcmp(a.omega.spec(), b.omega.spec(), bytes) == 0);

  // energy sits inside [band_lo, band_hi) only
  const auto& kabs = a.omega.grid().kabs();
  const double* s = a.omega.spec();
  double outside = 0;
  for (std::size_t m = 0; m < a.omega.grid().spec_size(); ++m) {
    const double mag = std::hypot(s[2 * m], s[2 * m + 1]);
    if (kabs[m] < 2.0 - 1e-12 || kabs[m] >= 6.0 - 1e-12) outside = std::max(outside, mag);
  }
  CHECK(outside == 0.0);
  CHECK(l2_via_parseval(a.omega) == doctest::Approx(2.0).epsilon(1e-12));

  init.kind = "no-such-kind";
  CHECK_THROWS_AS(scan::make_initial_state(cfg, init), std::invalid_argument);
}
