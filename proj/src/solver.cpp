#include "fracbou/solver.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "fracbou/kernels.hpp"
#include "fracbou/norms.hpp"

namespace fracbou {

int scheme_order(Scheme s) { return s == Scheme::ifrk2 ? 2 : 4; }

const char* scheme_name(Scheme s) { return s == Scheme::ifrk2 ? "ifrk2" : "ifrk4"; }

Scheme scheme_from_name(const std::string& name) {
  if (name == "ifrk2") return Scheme::ifrk2;
  if (name == "ifrk4") return Scheme::ifrk4;
  throw std::invalid_argument("unknown scheme: " + name);
}

void SolverConfig::validate() const {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and at least 8");
  if (!(length > 0.0)) throw std::invalid_argument("domain length must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must lie in (0, 1]");
  if (require_critical && std::fabs(alpha + beta - 1.0) > 1e-12)
    throw std::invalid_argument(
        "alpha + beta must equal 1; set require_critical=false to run off balance");
  if (!(nu >= 0.0) || !(kappa >= 0.0))
    throw std::invalid_argument("nu and kappa must be nonnegative");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
}

FlowState::FlowState(GridPtr grid) : omega(grid), theta(std::move(grid)) {}

SpectralField compute_g(const SpectralField& omega, const SpectralField& theta,
                        double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("compute_g needs alpha in (0, 2]");
  SpectralField r = lambda_d1(theta, -alpha);
  SpectralField g(omega.grid_ptr());
  const std::size_t m2 = 2 * omega.grid().spec_size();
  double* out = g.spec_mut();
  const double* a = omega.spec();
  const double* b = r.spec();
  for (std::size_t i = 0; i < m2; ++i) out[i] = a[i] - b[i];
  return g;
}

VelocitySplit velocity_split(const SpectralField& omega, const SpectralField& theta,
                             double alpha) {
  VelocitySplit v{biot_savart(omega),
                  biot_savart(compute_g(omega, theta, alpha)),
                  biot_savart(lambda_d1(theta, -alpha)), 0.0};
  const std::size_t mp = omega.grid().phys_size();
  double worst = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const double* tot = comp ? v.total.u2.phys() : v.total.u1.phys();
    const double* pg = comp ? v.from_g.u2.phys() : v.from_g.u1.phys();
    const double* pt = comp ? v.from_theta.u2.phys() : v.from_theta.u1.phys();
    for (std::size_t i = 0; i < mp; ++i)
      worst = std::max(worst, std::fabs(tot[i] - (pg[i] + pt[i])));
  }
  v.mismatch = worst;
  return v;
}

struct Stepper::Work {
  explicit Work(const SpectralGrid& g)
      : s_len(2 * g.spec_size()), p_len(g.phys_size()) {
    for (auto* b : {&k1w, &k1t, &k2w, &k2t, &k3w, &k3t, &k4w, &k4t, &stw, &stt, &eyw,
                    &eyt, &eyhw, &eyht, &accw, &acct, &tmpw, &tmpt})
      *b = detail::AlignedBuffer(s_len);
    for (auto* b : {&pu1, &pu2, &pd1, &pd2, &pprod}) *b = detail::AlignedBuffer(p_len);
  }
  std::size_t s_len, p_len;
  detail::AlignedBuffer k1w, k1t, k2w, k2t, k3w, k3t, k4w, k4t;
  detail::AlignedBuffer stw, stt, eyw, eyt, eyhw, eyht, accw, acct, tmpw, tmpt;
  detail::AlignedBuffer pu1, pu2, pd1, pd2, pprod;
};

Stepper::Stepper(const SolverConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  grid_ = SpectralGrid::create(cfg_.n, cfg_.length);
  ew_full_ = semigroup_table(*grid_, cfg_.nu * cfg_.dt, cfg_.alpha);
  ew_half_ = semigroup_table(*grid_, cfg_.nu * cfg_.dt / 2, cfg_.alpha);
  et_full_ = semigroup_table(*grid_, cfg_.kappa * cfg_.dt, cfg_.beta);
  et_half_ = semigroup_table(*grid_, cfg_.kappa * cfg_.dt / 2, cfg_.beta);
  const std::size_t ms = grid_->spec_size();
  vel1_tab_.resize(ms);
  vel2_tab_.resize(ms);
  const auto& k1 = grid_->kx1();
  const auto& k2 = grid_->kx2();
  const auto& kk = grid_->kabs2();
  for (std::size_t m = 1; m < ms; ++m) {
    vel1_tab_[m] = k2[m] / kk[m];
    vel2_tab_[m] = -k1[m] / kk[m];
  }
  work_ = std::make_unique<Work>(*grid_);
}

Stepper::~Stepper() = default;

// out_w = -P(u . grad omega) + i k1 theta, out_t = -P(u . grad theta),
// everything spectral, P the 2/3 mask
void Stepper::rhs(const double* w_spec, const double* t_spec, double* out_w,
                  double* out_t) {
  const std::size_t ms = grid_->spec_size();
  const std::size_t m2 = 2 * ms;
  Work& w = *work_;
  if (!cfg_.nonlinear) {
    std::memset(out_w, 0, m2 * sizeof(double));
    std::memset(out_t, 0, m2 * sizeof(double));
    return;
  }
  kernels::cmul_deriv(w.tmpw.data(), w_spec, vel1_tab_.data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pu1.data());
  kernels::cmul_deriv(w.tmpw.data(), w_spec, vel2_tab_.data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pu2.data());

  kernels::cmul_deriv(w.tmpw.data(), w_spec, grid_->kx1().data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pd1.data());
  kernels::cmul_deriv(w.tmpw.data(), w_spec, grid_->kx2().data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pd2.data());
  kernels::mul_add_pair(w.pprod.data(), w.pu1.data(), w.pd1.data(), w.pu2.data(),
                        w.pd2.data(), w.p_len);
  grid_->forward(w.pprod.data(), out_w);

  kernels::cmul_deriv(w.tmpw.data(), t_spec, grid_->kx1().data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pd1.data());
  kernels::cmul_deriv(w.tmpw.data(), t_spec, grid_->kx2().data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pd2.data());
  kernels::mul_add_pair(w.pprod.data(), w.pu1.data(), w.pd1.data(), w.pu2.data(),
                        w.pd2.data(), w.p_len);
  grid_->forward(w.pprod.data(), out_t);

  kernels::cmul_rtable(out_w, grid_->dealias_mask().data(), ms);
  kernels::scale(out_w, -1.0, m2);
  kernels::cmul_rtable(out_t, grid_->dealias_mask().data(), ms);
  kernels::scale(out_t, -1.0, m2);

  kernels::cmul_deriv(w.tmpw.data(), t_spec, grid_->kx1().data(), ms);
  kernels::axpy(out_w, 1.0, w.tmpw.data(), m2);
}

void Stepper::step_ifrk2(FlowState& s) {
  const std::size_t ms = grid_->spec_size();
  const std::size_t m2 = 2 * ms;
  const double dt = cfg_.dt;
  Work& w = *work_;
  double* yw = s.omega.spec_mut();
  double* yt = s.theta.spec_mut();

  rhs(yw, yt, w.k1w.data(), w.k1t.data());
  kernels::table_fma(w.stw.data(), ew_full_.data(), yw, dt, w.k1w.data(), ms);
  kernels::table_fma(w.stt.data(), et_full_.data(), yt, dt, w.k1t.data(), ms);
  rhs(w.stw.data(), w.stt.data(), w.k2w.data(), w.k2t.data());

  kernels::table_fma(yw, ew_full_.data(), yw, 0.5 * dt, w.k1w.data(), ms);
  kernels::axpy(yw, 0.5 * dt, w.k2w.data(), m2);
  kernels::table_fma(yt, et_full_.data(), yt, 0.5 * dt, w.k1t.data(), ms);
  kernels::axpy(yt, 0.5 * dt, w.k2t.data(), m2);
}

void Stepper::step_ifrk4(FlowState& s) {
  const std::size_t ms = grid_->spec_size();
  const std::size_t m2 = 2 * ms;
  const double dt = cfg_.dt;
  Work& w = *work_;
  double* yw = s.omega.spec_mut();
  double* yt = s.theta.spec_mut();

  rhs(yw, yt, w.k1w.data(), w.k1t.data());

  kernels::table_fma(w.stw.data(), ew_half_.data(), yw, 0.5 * dt, w.k1w.data(), ms);
  kernels::table_fma(w.stt.data(), et_half_.data(), yt, 0.5 * dt, w.k1t.data(), ms);
  rhs(w.stw.data(), w.stt.data(), w.k2w.data(), w.k2t.data());

  kernels::cmul_rtable_to(w.eyhw.data(), yw, ew_half_.data(), ms);
  kernels::cmul_rtable_to(w.eyht.data(), yt, et_half_.data(), ms);
  std::memcpy(w.stw.data(), w.eyhw.data(), m2 * sizeof(double));
  std::memcpy(w.stt.data(), w.eyht.data(), m2 * sizeof(double));
  kernels::axpy(w.stw.data(), 0.5 * dt, w.k2w.data(), m2);
  kernels::axpy(w.stt.data(), 0.5 * dt, w.k2t.data(), m2);
  rhs(w.stw.data(), w.stt.data(), w.k3w.data(), w.k3t.data());

  kernels::cmul_rtable_to(w.eyw.data(), yw, ew_full_.data(), ms);
  kernels::cmul_rtable_to(w.eyt.data(), yt, et_full_.data(), ms);
  kernels::cmul_rtable_to(w.tmpw.data(), w.k3w.data(), ew_half_.data(), ms);
  kernels::cmul_rtable_to(w.tmpt.data(), w.k3t.data(), et_half_.data(), ms);
  std::memcpy(w.stw.data(), w.eyw.data(), m2 * sizeof(double));
  std::memcpy(w.stt.data(), w.eyt.data(), m2 * sizeof(double));
  kernels::axpy(w.stw.data(), dt, w.tmpw.data(), m2);
  kernels::axpy(w.stt.data(), dt, w.tmpt.data(), m2);
  rhs(w.stw.data(), w.stt.data(), w.k4w.data(), w.k4t.data());

  kernels::cmul_rtable_to(w.accw.data(), w.k1w.data(), ew_full_.data(), ms);
  kernels::cmul_rtable_to(w.acct.data(), w.k1t.data(), et_full_.data(), ms);
  kernels::axpy(w.k2w.data(), 1.0, w.k3w.data(), m2);
  kernels::axpy(w.k2t.data(), 1.0, w.k3t.data(), m2);
  kernels::cmul_rtable(w.k2w.data(), ew_half_.data(), ms);
  kernels::cmul_rtable(w.k2t.data(), et_half_.data(), ms);
  kernels::axpy(w.accw.data(), 2.0, w.k2w.data(), m2);
  kernels::axpy(w.acct.data(), 2.0, w.k2t.data(), m2);
  kernels::axpy(w.accw.data(), 1.0, w.k4w.data(), m2);
  kernels::axpy(w.acct.data(), 1.0, w.k4t.data(), m2);

  std::memcpy(yw, w.eyw.data(), m2 * sizeof(double));
  std::memcpy(yt, w.eyt.data(), m2 * sizeof(double));
  kernels::axpy(yw, dt / 6.0, w.accw.data(), m2);
  kernels::axpy(yt, dt / 6.0, w.acct.data(), m2);
}

void Stepper::step(FlowState& s) {
  if (cfg_.scheme == Scheme::ifrk2)
    step_ifrk2(s);
  else
    step_ifrk4(s);
  s.step += 1;
  s.t += cfg_.dt;
  const double mw = kernels::max_abs(s.omega.spec(), 2 * grid_->spec_size());
  const double mt = kernels::max_abs(s.theta.spec(), 2 * grid_->spec_size());
  if (!std::isfinite(mw) || !std::isfinite(mt))
    throw std::runtime_error("solution lost finiteness at t = " + std::to_string(s.t));
}

double Stepper::cfl_limit(const FlowState& s) const {
  const std::size_t ms = grid_->spec_size();
  Work& w = *work_;
  kernels::cmul_deriv(w.tmpw.data(), s.omega.spec(), vel1_tab_.data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pu1.data());
  kernels::cmul_deriv(w.tmpw.data(), s.omega.spec(), vel2_tab_.data(), ms);
  grid_->inverse_destructive(w.tmpw.data(), w.pu2.data());
  const double umax = std::max(kernels::max_abs(w.pu1.data(), w.p_len),
                               kernels::max_abs(w.pu2.data(), w.p_len));
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  return grid_->spacing() / umax;
}

FlowState Stepper::run(FlowState s, const Sink& sink) {
  const SpectralGrid& sg = s.omega.grid();
  if (sg.n() != grid_->n() || sg.length() != grid_->length())
    throw std::invalid_argument("state grid does not match the stepper grid");
  const std::size_t ms = grid_->spec_size();
  kernels::cmul_rtable(s.omega.spec_mut(), grid_->dealias_mask().data(), ms);
  kernels::cmul_rtable(s.theta.spec_mut(), grid_->dealias_mask().data(), ms);
  if (sink) sink(s);
  const long nsteps = std::lround(cfg_.t_end / cfg_.dt);
  for (long i = 0; i < nsteps; ++i) {
    step(s);
    if (sink) sink(s);
  }
  return s;
}

double g_residual(const FlowState& prev, const FlowState& mid, const FlowState& next,
                  const SolverConfig& cfg) {
  const double dtf = next.t - mid.t;
  const double dtb = mid.t - prev.t;
  if (!(dtf > 0.0) || std::fabs(dtf - dtb) > 1e-9 * dtf)
    throw std::invalid_argument("g_residual needs equally spaced states");

  const double alpha = cfg.alpha;
  SpectralField gp = compute_g(prev.omega, prev.theta, alpha);
  SpectralField gm = compute_g(mid.omega, mid.theta, alpha);
  SpectralField gn = compute_g(next.omega, next.theta, alpha);

  FlowVelocity u = biot_savart(mid.omega);
  SpectralField adv_g = advect(u, gm);
  SpectralField diss = fractional_laplacian(gm, alpha);

  SpectralField r_theta = lambda_d1(mid.theta, -alpha);
  SpectralField comm_a = lambda_d1(advect(u, mid.theta), -alpha);
  SpectralField comm_b = advect(u, r_theta);

  SpectralField lin = lambda_d1(mid.theta, cfg.beta - alpha);
  SpectralField buoy = derivative(mid.theta, 1);

  SpectralField resid(gm.grid_ptr());
  const std::size_t m2 = 2 * gm.grid().spec_size();
  double* r = resid.spec_mut();
  const double* pgp = gp.spec();
  const double* pgn = gn.spec();
  const double* padv = adv_g.spec();
  const double* pdis = diss.spec();
  const double* pca = comm_a.spec();
  const double* pcb = comm_b.spec();
  const double* plin = lin.spec();
  const double* pbuo = buoy.spec();
  const double inv2dt = 1.0 / (2.0 * dtf);
  for (std::size_t i = 0; i < m2; ++i)
    r[i] = (pgn[i] - pgp[i]) * inv2dt + padv[i] + cfg.nu * pdis[i] -
           (pca[i] - pcb[i]) - cfg.kappa * plin[i] - (1.0 - cfg.nu) * pbuo[i];
  return lebesgue_norm(resid, 2.0);
}

}  // namespace fracbou
