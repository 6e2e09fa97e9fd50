#include "fracbou/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracbou/norms.hpp"

namespace fracbou {

namespace {
const double inf = std::numeric_limits<double>::infinity();
const double nan = std::numeric_limits<double>::quiet_NaN();

// slack constant for the sampled maximum principle, sized against the
// observed overshoot of the default scheme on smooth data
constexpr double max_principle_c = 50.0;
constexpr double g_growth_ceiling = 2.0;  // log slope per unit time
constexpr double g_size_ceiling = 1e6;
constexpr double besov_gate = 7.0 / 9.0;
}  // namespace

Monitor::Monitor(const SolverConfig& cfg, int sample_every)
    : cfg_(cfg), sample_every_(std::max(1, sample_every)) {
  cfg_.validate();
}

double Monitor::max_principle_tolerance() const {
  return 1e-6 + max_principle_c * std::pow(cfg_.dt, scheme_order(cfg_.scheme));
}

double Monitor::energy_tolerance() const {
  return 1e-4 * std::pow(cfg_.dt / 1e-3, scheme_order(cfg_.scheme));
}

double Monitor::u_l2_of(const SpectralField& omega) const {
  const SpectralGrid& g = omega.grid();
  const double* c = omega.spec();
  const auto& w = g.hermitian_weight();
  const auto& kk = g.kabs2();
  double acc = 0.0;
  for (std::size_t m = 1; m < g.spec_size(); ++m)
    acc += w[m] * (c[2 * m] * c[2 * m] + c[2 * m + 1] * c[2 * m + 1]) / kk[m];
  return std::sqrt(g.cell_area() * acc / double(g.phys_size()));
}

DiagnosticRecord Monitor::make_record(const FlowState& s) const {
  DiagnosticRecord r;
  r.t = s.t;
  r.theta_l2 = l2_via_parseval(s.theta);
  r.theta_l4 = lebesgue_norm(s.theta, 4.0);
  r.theta_linf = lebesgue_norm(s.theta, inf);
  r.u_l2 = u_l2_of(s.omega);
  r.omega_l2 = l2_via_parseval(s.omega);

  SpectralField g = compute_g(s.omega, s.theta, cfg_.alpha);
  r.g_l2 = l2_via_parseval(g);
  r.g_l6 = lebesgue_norm(g, 6.0);
  if (cfg_.alpha > besov_gate)
    r.g_besov = lp::besov_norm(g, *fam_, 3.0 * cfg_.alpha - 2.0, 6.0, inf);
  else
    r.g_besov = nan;

  FlowVelocity ug = biot_savart(g);
  double worst = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const SpectralField& u = comp ? ug.u2 : ug.u1;
    for (int axis = 1; axis <= 2; ++axis)
      worst = std::max(worst, lebesgue_norm(derivative(u, axis), inf));
  }
  r.grad_ug_linf = worst;

  r.theta_diss = acc_theta_;
  r.g_diss = acc_g_;
  const double energy = r.theta_l2 * r.theta_l2 + 2.0 * cfg_.kappa * acc_theta_;
  r.theta_energy_drift =
      std::fabs(energy - theta0_l2_sq_) / std::max(theta0_l2_sq_, 1e-300);
  return r;
}

void Monitor::observe(const FlowState& s) {
  if (!primed_) {
    grid_ = s.omega.grid_ptr();
    int jm = 0;
    while (std::ldexp(1.0, jm + 2) <= grid_->nyquist()) ++jm;
    fam_ = std::make_unique<lp::DyadicFamily>(lp::DyadicFamily::build(grid_, jm));
  }

  const double itheta = lambda_sq_norm(s.theta, cfg_.beta);
  SpectralField g = compute_g(s.omega, s.theta, cfg_.alpha);
  const double ig = lambda_sq_norm(g, cfg_.alpha);
  if (primed_) {
    const double h = s.t - prev_t_;
    acc_theta_ += 0.5 * (prev_itheta_ + itheta) * h;
    acc_g_ += 0.5 * (prev_ig_ + ig) * h;
  }
  prev_t_ = s.t;
  prev_itheta_ = itheta;
  prev_ig_ = ig;

  if (!primed_) {
    theta0_l2_ = l2_via_parseval(s.theta);
    theta0_l2_sq_ = theta0_l2_ * theta0_l2_;
    u0_l2_ = u_l2_of(s.omega);
    primed_ = true;
  }
  if (s.step % sample_every_ == 0) recs_.push_back(make_record(s));
}

CheckVerdict Monitor::check_max_principle() const {
  CheckVerdict v;
  v.name = "theta-max-principle";
  v.tolerance = max_principle_tolerance();
  double worst = -inf;
  double running4 = inf, runningI = inf;
  for (const auto& r : recs_) {
    const double e4 = r.theta_l4 - running4;
    const double eI = r.theta_linf - runningI;
    for (double e : {e4, eI})
      if (e > worst) {
        worst = e;
        v.worst_t = r.t;
      }
    running4 = std::min(running4, r.theta_l4);
    runningI = std::min(runningI, r.theta_linf);
  }
  v.worst_value = recs_.empty() ? 0.0 : std::max(worst, 0.0);
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance;
  v.note = "L4 and Linf of theta against their running minima";
  return v;
}

CheckVerdict Monitor::check_theta_energy() const {
  CheckVerdict v;
  v.name = "theta-energy";
  v.tolerance = energy_tolerance();
  for (const auto& r : recs_)
    if (r.theta_energy_drift > v.worst_value) {
      v.worst_value = r.theta_energy_drift;
      v.worst_t = r.t;
    }
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance;
  v.note = "relative drift of ||theta||^2 + 2 kappa int ||Lambda^{beta/2} theta||^2";
  return v;
}

CheckVerdict Monitor::check_velocity_growth() const {
  CheckVerdict v;
  v.name = "velocity-growth";
  v.tolerance = 1e-6;
  v.worst_value = -inf;
  for (const auto& r : recs_) {
    const double excess = r.u_l2 - (u0_l2_ + r.t * theta0_l2_);
    if (excess > v.worst_value) {
      v.worst_value = excess;
      v.worst_t = r.t;
    }
  }
  if (recs_.empty()) v.worst_value = 0.0;
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance;
  v.note = "||u|| against ||u0|| + t ||theta0||";
  return v;
}

CheckVerdict Monitor::check_g_l2() const {
  CheckVerdict v;
  v.name = "g-l2-bounded";
  v.tolerance = g_size_ceiling;
  for (const auto& r : recs_) {
    if (!std::isfinite(r.g_l2)) {
      v.worst_value = r.g_l2;
      v.worst_t = r.t;
      v.pass = false;
      v.note = "lost finiteness";
      return v;
    }
    if (r.g_l2 > v.worst_value) {
      v.worst_value = r.g_l2;
      v.worst_t = r.t;
    }
  }
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance;
  v.note = "sup of ||G||_L2 over the run";
  return v;
}

CheckVerdict Monitor::check_g_l6_growth() const {
  CheckVerdict v;
  v.name = "g-l6-growth";
  v.tolerance = g_growth_ceiling;
  v.worst_value = -inf;
  for (std::size_t i = 1; i < recs_.size(); ++i) {
    const double h = recs_[i].t - recs_[i - 1].t;
    if (!(h > 0.0)) continue;
    const double slope =
        (std::log(recs_[i].g_l6 + 1e-30) - std::log(recs_[i - 1].g_l6 + 1e-30)) / h;
    if (slope > v.worst_value) {
      v.worst_value = slope;
      v.worst_t = recs_[i].t;
    }
  }
  if (recs_.size() < 2) v.worst_value = 0.0;
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance &&
           std::isfinite(recs_.back().g_l6);
  v.note = "log slope of ||G||_L6 between samples";
  return v;
}

CheckVerdict Monitor::check_g_besov_lipschitz() const {
  CheckVerdict v;
  v.name = "g-besov-lipschitz";
  if (!(cfg_.alpha > besov_gate)) {
    v.skipped = true;
    v.pass = true;
    v.note = "needs alpha > 7/9 for the embedding this norm feeds";
    return v;
  }
  v.tolerance = g_size_ceiling;
  for (const auto& r : recs_) {
    const double m = std::max(r.g_besov, r.grad_ug_linf);
    if (!std::isfinite(m)) {
      v.worst_value = m;
      v.worst_t = r.t;
      v.pass = false;
      v.note = "lost finiteness";
      return v;
    }
    if (m > v.worst_value) {
      v.worst_value = m;
      v.worst_t = r.t;
    }
  }
  v.pass = !recs_.empty() && v.worst_value <= v.tolerance;
  v.note = "sup of the G Besov norm and ||grad u_G||_Linf";
  return v;
}

std::vector<CheckVerdict> Monitor::all_checks() const {
  return {check_max_principle(), check_theta_energy(),   check_velocity_growth(),
          check_g_l2(),          check_g_l6_growth(),    check_g_besov_lipschitz()};
}

}  // namespace fracbou
