// Command line front end: simulate runs the flow under the full monitor,
// exponents exposes the index algebra, verify exercises the numerical layers
// against analytic references, scan produces rate and bracket data as CSV.
//
// Exit codes: 0 success, 1 a verdict or verification failed, 2 bad
// configuration or usage, 3 the run lost finiteness or the requested scan
// geometry is not resolved on the grid.

#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracbou/config.hpp"
#include "fracbou/diagnostics.hpp"
#include "fracbou/exponents.hpp"
#include "fracbou/kernels.hpp"
#include "fracbou/lp.hpp"
#include "fracbou/multiplier.hpp"
#include "fracbou/norms.hpp"
#include "fracbou/scan.hpp"
#include "fracbou/snapshot.hpp"
#include "fracbou/solver.hpp"

namespace fb = fracbou;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string file_checksum(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  char out[32];
  std::snprintf(out, sizeof out, "%016" PRIx64, fnv1a(buf.str()));
  return out;
}

void write_text(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

int largest_resolved_j(const fb::SpectralGrid& g) {
  int jm = 0;
  while (std::ldexp(1.0, jm + 2) <= g.nyquist()) ++jm;
  return jm;
}

void thread_notice() {
  const char* tv = std::getenv("FRACBOU_THREADS");
  if (tv && std::string(tv) != "1")
    std::fprintf(stderr,
                 "note: FRACBOU_THREADS=%s requested, this build runs single "
                 "threaded\n",
                 tv);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& sets,
                 std::int64_t seed, const std::string& out_dir) {
  fb::RunConfig cfg;
  std::optional<fb::FlowState> state;
  try {
    if (!config_path.empty()) cfg = fb::parse_config_file(config_path);
    for (const auto& s : sets) fb::apply_override(cfg, s);
    if (seed >= 0) cfg.init.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    cfg.solver.validate();
    state.emplace(fb::scan::make_initial_state(cfg.solver, cfg.init));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  fb::Stepper stepper(cfg.solver);
  fb::Monitor monitor(cfg.solver, cfg.output.cadence);
  std::optional<fb::FlowState> final_state;
  try {
    final_state.emplace(stepper.run(
        std::move(*state), [&](const fb::FlowState& s) { monitor.observe(s); }));
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "run aborted: %s\n", e.what());
    return 3;
  }

  namespace fs = std::filesystem;
  const fs::path dir(cfg.output.dir);
  fs::create_directories(dir);

  std::ostringstream csv;
  csv << "t,theta_l2,theta_l4,theta_linf,u_l2,omega_l2,g_l2,g_l6,g_besov,"
         "grad_ug_linf,theta_diss,g_diss,theta_energy_drift\n";
  char row[512];
  for (const auto& r : monitor.records()) {
    std::snprintf(row, sizeof row,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g\n",
                  r.t, r.theta_l2, r.theta_l4, r.theta_linf, r.u_l2, r.omega_l2,
                  r.g_l2, r.g_l6, r.g_besov, r.grad_ug_linf, r.theta_diss, r.g_diss,
                  r.theta_energy_drift);
    csv << row;
  }
  write_text(dir / "timeseries.csv", csv.str());
  write_text(dir / "config.ini", fb::render_config(cfg));

  const auto verdicts = monitor.all_checks();
  bool all_pass = true;
  json jv = json::array();
  for (const auto& v : verdicts) {
    all_pass = all_pass && (v.pass || v.skipped);
    jv.push_back({{"name", v.name},
                  {"pass", v.pass},
                  {"skipped", v.skipped},
                  {"worst_value", v.worst_value},
                  {"worst_t", v.worst_t},
                  {"tolerance", v.tolerance},
                  {"note", v.note}});
  }
  json verdict_doc = {{"pass", all_pass}, {"checks", jv}};
  write_text(dir / "verdicts.json", verdict_doc.dump(2) + "\n");

  std::vector<std::string> files = {"timeseries.csv", "config.ini", "verdicts.json"};
  if (cfg.output.snapshots) {
    fb::save_field(final_state->omega, (dir / "omega_final.snap").string());
    fb::save_field(final_state->theta, (dir / "theta_final.snap").string());
    files.push_back("omega_final.snap");
    files.push_back("theta_final.snap");
  }

  json checksums;
  for (const auto& f : files) checksums[f] = file_checksum(dir / f);
  json manifest = {{"tool", "fracbou"},
                   {"command", "simulate"},
                   {"backend", fb::kernels::backend_name(fb::kernels::active_backend())},
                   {"scheme", fb::scheme_name(cfg.solver.scheme)},
                   {"n", cfg.solver.n},
                   {"steps", final_state->step},
                   {"t_final", final_state->t},
                   {"records", monitor.records().size()},
                   {"checksum", "fnv1a-64"},
                   {"files", checksums}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& v : verdicts) {
    const char* tag = v.skipped ? "skip" : (v.pass ? "ok" : "FAIL");
    std::printf("%-4s %-22s worst=%-12.6g tol=%-10.6g %s\n", tag, v.name.c_str(),
                v.worst_value, v.tolerance, v.note.c_str());
  }
  std::printf("result: %s (%zu records in %s)\n", all_pass ? "PASS" : "FAIL",
              monitor.records().size(), dir.string().c_str());
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------- exponents

void print_assignment_text(const fb::exponents::ExponentAssignment& e,
                           const fb::exponents::ClosureReport& rep) {
  std::printf("alpha   = %.17g\nbeta    = %.17g\ngamma   = %.17g\nrho     = %.17g\n",
              e.alpha, e.beta, e.gamma, e.rho);
  std::printf("a       = %.17g   (in (0,1): %s)\n", e.a, e.a_in_01 ? "yes" : "no");
  std::printf("b       = %.17g   (in (0,1): %s)\n", e.b, e.b_in_01 ? "yes" : "no");
  std::printf("b_bal   = %.17g\n", e.b_balance);
  std::printf("beta1   = %.17g   (in (0,1): %s)\n", e.beta1,
              e.beta1_in_01 ? "yes" : "no");
  std::printf("1/p1    = %.17g   p1 = %.17g\n", e.inv_p1, e.p1);
  std::printf("1/p2    = %.17g   p2 = %.17g\n", e.inv_p2, e.p2);
  std::printf("1/p3    = %.17g   p3 = %.17g\n", e.inv_p3, e.p3);
  std::printf("s       = %.17g   window (%.17g, %.17g) %s\n", e.s, e.s_lo, e.s_hi,
              e.s_window_nonempty ? "nonempty" : "EMPTY");
  std::printf("s1      = %.17g\n", e.s1);
  std::printf("s2      = %.17g   window (%.17g, %.17g)\n", e.s2, e.s2_lo, e.s2_hi);
  for (const auto& c : rep.conditions)
    std::printf("%-4s %-26s lhs=%-22.15g rhs=%-22.15g%s\n",
                c.satisfied ? "ok" : "FAIL", c.name.c_str(), c.lhs, c.rhs,
                c.identically ? "  (identity)" : "");
  std::printf("route gap = %.3g\nclosure: %s\n", rep.route_gap,
              rep.all_pass ? "PASS" : "FAIL");
}

json assignment_json(const fb::exponents::ExponentAssignment& e,
                     const fb::exponents::ClosureReport& rep) {
  json jc = json::array();
  for (const auto& c : rep.conditions)
    jc.push_back({{"name", c.name},
                  {"lhs", c.lhs},
                  {"rhs", c.rhs},
                  {"satisfied", c.satisfied},
                  {"identity", c.identically}});
  return {{"alpha", e.alpha},       {"beta", e.beta},
          {"gamma", e.gamma},       {"rho", e.rho},
          {"a", e.a},               {"b", e.b},
          {"b_balance", e.b_balance}, {"beta1", e.beta1},
          {"p1", e.p1},             {"p2", e.p2},
          {"p3", e.p3},             {"s", e.s},
          {"s_lo", e.s_lo},         {"s_hi", e.s_hi},
          {"s1", e.s1},             {"s2", e.s2},
          {"closure_pass", rep.all_pass}, {"route_gap", rep.route_gap},
          {"conditions", jc}};
}

int cmd_exponents(bool optimize, int table_n, double alpha_lo, double alpha_hi,
                  bool prior_q0, double alpha, double gamma, double rho,
                  const std::string& format) {
  namespace ex = fb::exponents;
  if (optimize) {
    const ex::OptimizeResult r = ex::optimize_gamma();
    if (format == "json") {
      json j = {{"gamma0", r.gamma0},
                {"alpha_cr", r.alpha_cr},
                {"curve_alpha_one", r.curve_alpha_one},
                {"curve_beta1_bound", r.curve_beta1_bound},
                {"curve_s_window", r.curve_s_window},
                {"grid_gs_gap", r.grid_gs_gap},
                {"gap_gamma", r.gap_gamma},
                {"gap_alpha", r.gap_alpha}};
      std::printf("%s\n", j.dump(2).c_str());
    } else {
      std::printf("gamma0 = %.6g\nalpha_cr = %.6g\n", r.gamma0, r.alpha_cr);
      std::printf("envelope at gamma0: s-window %.6g, beta1 %.6g, alpha-one %.6g\n",
                  r.curve_s_window, r.curve_beta1_bound, r.curve_alpha_one);
      std::printf("optimizer route gap %.3g, closed-form gap (%.3g, %.3g)\n",
                  r.grid_gs_gap, r.gap_gamma, r.gap_alpha);
      std::printf("exact: gamma0 = (43 - sqrt(1777))/36, alpha_cr = (sqrt(1777) - 23)/24\n");
    }
    return 0;
  }
  if (table_n > 0) {
    const auto rows = ex::feasibility_table(gamma, rho, table_n, alpha_lo, alpha_hi);
    std::printf("alpha,a,b,beta1,ranges_ok,closure_ok\n");
    for (const auto& r : rows)
      std::printf("%.17g,%.17g,%.17g,%.17g,%d,%d\n", r.alpha, r.a, r.b, r.beta1,
                  r.ranges_ok ? 1 : 0, r.closure_ok ? 1 : 0);
    return 0;
  }
  if (prior_q0) {
    std::printf("q0 = %.15g\n", ex::q0_prior(alpha));
    return 0;
  }
  const ex::ExponentAssignment e = ex::make_assignment(alpha, gamma, rho);
  const ex::ClosureReport rep = ex::check_closure(e);
  if (format == "json")
    std::printf("%s\n", assignment_json(e, rep).dump(2).c_str());
  else
    print_assignment_text(e, rep);
  return rep.all_pass ? 0 : 1;
}

// ------------------------------------------------------------------ verify

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

void report(std::vector<CheckLine>& acc, const std::string& name, bool pass,
            double value, double tol) {
  char d[128];
  std::snprintf(d, sizeof d, "value=%.3g tol=%.3g", value, tol);
  acc.push_back({name, pass, d});
}

fb::SpectralField pure_mode(fb::GridPtr g, int row, int col,
                            std::complex<double> coeff) {
  const int n = g->n();
  const int nh = n / 2 + 1;
  std::vector<std::complex<double>> spec(g->spec_size());
  spec[std::size_t(row) * nh + col] = coeff;
  // self conjugate columns store both half planes, so the mirror row carries
  // the conjugate coefficient explicitly
  if ((col == 0 || col == n / 2) && row > 0 && row != n / 2)
    spec[std::size_t(n - row) * nh + col] = std::conj(coeff);
  return fb::SpectralField::from_spectral(std::move(g), spec);
}

fb::SpectralField random_field(fb::GridPtr g, std::uint64_t seed, bool zero_mean) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(g->phys_size());
  for (auto& x : v) x = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
  auto f = fb::SpectralField::from_physical(std::move(g), v);
  if (zero_mean) {
    double* s = f.spec_mut();
    s[0] = s[1] = 0.0;
  }
  return f;
}

double max_phys_diff(const fb::SpectralField& a, const fb::SpectralField& b) {
  const double* pa = a.phys();
  const double* pb = b.phys();
  double m = 0;
  for (std::size_t i = 0; i < a.grid().phys_size(); ++i)
    m = std::max(m, std::fabs(pa[i] - pb[i]));
  return m;
}

void verify_operators(std::vector<CheckLine>& acc, int n, std::uint64_t seed) {
  auto g = fb::SpectralGrid::create(n);
  const double ks = g->kscale();

  // cos(2 x2) lives at lattice mode (0, 2); Lambda^s must scale it by (2 ks)^s
  {
    auto f = pure_mode(g, 0, 2, 0.5 * double(g->phys_size()));
    auto lf = fb::fractional_laplacian(f, 0.7);
    const double lam = std::pow(2.0 * ks, 0.7);
    double worst = 0;
    const double* pf = f.phys();
    const double* pl = lf.phys();
    for (std::size_t i = 0; i < g->phys_size(); ++i)
      worst = std::max(worst, std::fabs(pl[i] - lam * pf[i]));
    report(acc, "operators/plane-wave-eigenvalue", worst < 1e-12, worst, 1e-12);
  }
  {
    auto f = pure_mode(g, 3, 0, 0.5 * double(g->phys_size()));
    auto df = fb::derivative(f, 1);
    auto ref = pure_mode(g, 3, 0, std::complex<double>(0.0, 3.0 * ks) *
                                      (0.5 * double(g->phys_size())));
    const double worst = max_phys_diff(df, ref);
    report(acc, "operators/derivative-exact", worst < 1e-12, worst, 1e-12);
  }
  {
    auto f = random_field(g, seed, true);
    auto lhs = fb::fractional_laplacian(fb::fractional_laplacian(f, 0.35), 0.4);
    auto rhs = fb::fractional_laplacian(f, 0.75);
    const double worst = max_phys_diff(lhs, rhs);
    report(acc, "operators/composition", worst < 1e-10, worst, 1e-10);
  }
  {
    auto f = random_field(g, seed + 1, true);
    auto back = fb::fractional_laplacian(fb::fractional_laplacian(f, 0.6), -0.6);
    const double worst = max_phys_diff(back, f);
    report(acc, "operators/inverse", worst < 1e-10, worst, 1e-10);
  }
  {
    auto w = random_field(g, seed + 2, true);
    auto vel = fb::biot_savart(w);
    auto div = fb::derivative(vel.u1, 1);
    auto d2 = fb::derivative(vel.u2, 2);
    const double* a = div.phys();
    const double* b = d2.phys();
    double worst = 0;
    for (std::size_t i = 0; i < g->phys_size(); ++i)
      worst = std::max(worst, std::fabs(a[i] + b[i]));
    report(acc, "operators/biot-savart-divfree", worst < 1e-9, worst, 1e-9);
  }
  {
    auto f = random_field(g, seed + 3, false);
    const double* p = f.phys();
    double acc2 = 0;
    for (std::size_t i = 0; i < g->phys_size(); ++i) acc2 += p[i] * p[i];
    const double direct = std::sqrt(g->cell_area() * acc2);
    const double viaspec = fb::l2_via_parseval(f);
    const double worst = std::fabs(direct - viaspec) / direct;
    report(acc, "operators/parseval", worst < 1e-12, worst, 1e-12);
  }
  {
    const auto tab = fb::semigroup_table(*g, 0.37, 0.85);
    const auto& kabs = g->kabs();
    double worst = 0;
    for (std::size_t m = 0; m < g->spec_size(); ++m)
      worst = std::max(worst,
                       std::fabs(tab[m] - std::exp(-0.37 * std::pow(kabs[m], 0.85))));
    report(acc, "operators/semigroup-table", worst < 1e-13, worst, 1e-13);
  }
  {
    auto w = random_field(g, seed + 4, true);
    auto f = random_field(g, seed + 5, false);
    auto adv = fb::advect(fb::biot_savart(w), f);
    const double mean = std::fabs(adv.spec()[0]) / double(g->phys_size());
    report(acc, "operators/advect-mean", mean < 1e-13, mean, 1e-13);
  }
}

void verify_lp(std::vector<CheckLine>& acc, int n, std::uint64_t seed) {
  auto g = fb::SpectralGrid::create(n);
  const auto fam = fb::lp::DyadicFamily::build(g, largest_resolved_j(*g));
  {
    const double r = fam.partition_residual();
    report(acc, "lp/partition-unity", r < 1e-12, r, 1e-12);
  }
  auto f = random_field(g, seed, true);
  {
    fb::SpectralField sum(g);
    for (int j = -1; j <= fam.j_cover(); ++j) {
      auto blk = fb::lp::dyadic_block(f, fam, j);
      double* s = sum.spec_mut();
      const double* bs = blk.spec();
      for (std::size_t i = 0; i < 2 * g->spec_size(); ++i) s[i] += bs[i];
    }
    const double worst = max_phys_diff(sum, f);
    report(acc, "lp/block-reconstruction", worst < 1e-10, worst, 1e-10);
  }
  {
    double worst = 0;
    for (int j = -1; j <= fam.j_cover(); ++j)
      for (int k = j + 2; k <= fam.j_cover(); ++k) {
        const auto& tj = j == -1 ? fam.low_table() : fam.block_table(j);
        const auto& tk = fam.block_table(k);
        for (std::size_t m = 0; m < g->spec_size(); ++m)
          worst = std::max(worst, std::fabs(tj[m] * tk[m]));
      }
    report(acc, "lp/almost-orthogonality", worst == 0.0, worst, 0.0);
  }
  {
    const double b = fb::lp::besov_norm(f, fam, 0.0, 2.0, 2.0);
    const double l2 = fb::l2_via_parseval(f);
    const double ratio = b / l2;
    const bool ok = ratio > 1.0 / std::sqrt(2.0) - 1e-10 && ratio < 1.0 + 1e-10;
    report(acc, "lp/besov-l2-bracket", ok, ratio, 1.0);
  }
  {
    const auto sweep = fb::scan::bernstein_sweep(g, fam, 0.85, 20, seed);
    report(acc, "lp/bernstein-sweep", sweep.failures == 0, sweep.failures, 0.0);
  }
}

void verify_commutators(std::vector<CheckLine>& acc, int n, std::uint64_t seed) {
  auto g = fb::SpectralGrid::create(n);
  const auto fam = fb::lp::DyadicFamily::build(g, largest_resolved_j(*g));
  const int k_max = std::min(5, fam.j_max());
  const auto sweep =
      fb::scan::commutator_sweep(g, fam, {0.6, 0.85}, 2, seed, 1, k_max);
  for (const auto& c : sweep.cases) {
    char name[96];
    std::snprintf(name, sizeof name, "commutators/alpha=%.2f seed=%" PRIu64,
                  c.alpha, c.seed);
    char d[160];
    std::snprintf(d, sizeof d,
                  "slope_g=%.3f (<= %.3f), slope_t=%.3f (<= %.3f)", c.scan.slope_g,
                  c.scan.theory_g + c.scan.tol, c.scan.slope_t,
                  c.scan.theory_t + c.scan.tol);
    acc.push_back({name, c.scan.pass_g && c.scan.pass_t, d});
  }
}

void verify_exponents(std::vector<CheckLine>& acc) {
  namespace ex = fb::exponents;
  {
    const double gg = std::fabs(ex::gamma0_closed() - 0.0234867273134449);
    const double ga = std::fabs(ex::alpha_cr_closed() - 0.7981032423631660);
    report(acc, "exponents/gamma0-closed", gg < 1e-14, gg, 1e-14);
    report(acc, "exponents/alpha-cr-closed", ga < 1e-14, ga, 1e-14);
  }
  {
    const auto e = ex::make_assignment(0.85, ex::gamma0_closed(), 1e-6);
    const auto rep = ex::check_closure(e);
    report(acc, "exponents/closure-0.85", rep.all_pass, rep.route_gap, 1e-11);
  }
  {
    const auto r = ex::optimize_gamma();
    const double worst = std::max({r.grid_gs_gap, r.gap_gamma, r.gap_alpha});
    report(acc, "exponents/optimizer", worst < 1e-7, worst, 1e-7);
  }
  {
    bool ok = true;
    double worst = 0;
    for (int i = 1; i <= 40; ++i) {
      const double a = 0.8 + 0.2 * i / 41.0;
      const double q = ex::q0_prior(a);
      ok = ok && q > 2.0 && q < 4.0;
      worst = std::max(worst, q);
    }
    report(acc, "exponents/q0-range", ok, worst, 4.0);
  }
}

int cmd_verify(const std::string& suite, int n, std::uint64_t seed,
               const std::string& fault) {
  if (!fault.empty()) {
    if (fault != "multiplier")
      throw std::invalid_argument("unknown fault '" + fault + "'");
    fb::testhooks::set_multiplier_fault(true);
    std::fprintf(stderr, "note: multiplier fault injected, failures expected\n");
  }
  std::vector<CheckLine> acc;
  if (suite == "operators" || suite == "all") verify_operators(acc, n, seed);
  if (suite == "lp" || suite == "all") verify_lp(acc, n, seed);
  if (suite == "commutators" || suite == "all") verify_commutators(acc, n, seed);
  if (suite == "exponents" || suite == "all") verify_exponents(acc);
  if (acc.empty())
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (operators|lp|commutators|exponents|all)");
  int failures = 0;
  for (const auto& c : acc) {
    if (!c.pass) ++failures;
    std::printf("%-4s %-34s %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  }
  std::printf("verify: %d/%zu passed\n", int(acc.size()) - failures, acc.size());
  return failures == 0 ? 0 : 1;
}

// -------------------------------------------------------------------- scan

int cmd_scan(const std::string& kind, int n, std::vector<double> alphas, int seeds,
             std::uint64_t seed0, int k_min, int k_max, int trials) {
  auto g = fb::SpectralGrid::create(n);
  const auto fam = fb::lp::DyadicFamily::build(g, largest_resolved_j(*g));
  if (kind == "commutator") {
    if (alphas.empty()) alphas = {0.6, 0.85};
    if (k_max <= 0) k_max = fam.j_max();
    fb::scan::CommutatorSweep sweep;
    try {
      sweep = fb::scan::commutator_sweep(g, fam, alphas, seeds, seed0, k_min, k_max);
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "under-resolved: %s\n", e.what());
      return 3;
    }
    std::printf("seed,alpha,variant,k,block_norm,theory_bound,ratio,slope,theory,pass\n");
    for (const auto& c : sweep.cases) {
      for (const auto& r : c.scan.rows_g)
        std::printf("%" PRIu64 ",%.17g,g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                    c.seed, c.alpha, r.k, r.block_norm, r.theory_bound, r.ratio,
                    c.scan.slope_g, c.scan.theory_g, c.scan.pass_g ? 1 : 0);
      for (const auto& r : c.scan.rows_t)
        std::printf("%" PRIu64 ",%.17g,t,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                    c.seed, c.alpha, r.k, r.block_norm, r.theory_bound, r.ratio,
                    c.scan.slope_t, c.scan.theory_t, c.scan.pass_t ? 1 : 0);
    }
    std::fprintf(stderr, "%zu cases, %d rate failures\n", sweep.cases.size(),
                 sweep.failures);
    return 0;
  }
  if (kind == "bernstein") {
    const double alpha = alphas.empty() ? 0.85 : alphas.front();
    fb::scan::BernsteinSweep sweep;
    try {
      sweep = fb::scan::bernstein_sweep(g, fam, alpha, trials, seed0);
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "under-resolved: %s\n", e.what());
      return 3;
    }
    std::printf("seed,j,low_ratio,high_ratio,in_bracket\n");
    for (const auto& t : sweep.trials)
      std::printf("%" PRIu64 ",%d,%.17g,%.17g,%d\n", t.seed, t.j, t.low_ratio,
                  t.high_ratio, t.in_bracket ? 1 : 0);
    std::fprintf(stderr, "bracket [%.17g, %.17g], %d out of bracket\n",
                 sweep.bracket_lo, sweep.bracket_hi, sweep.failures);
    return 0;
  }
  throw std::invalid_argument("unknown scan kind '" + kind +
                              "' (commutator|bernstein)");
}

}  // namespace

int main(int argc, char** argv) {
  fb::kernels::init_from_env();
  thread_notice();

  CLI::App app{"fractional Boussinesq simulator and analysis toolkit"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run the flow under the monitor");
  std::string config_path, out_dir;
  std::vector<std::string> sets;
  std::int64_t seed_override = -1;
  sim->add_option("--config", config_path, "INI configuration file");
  sim->add_option("--set", sets, "override, section.key=value")->allow_extra_args(false);
  sim->add_option("--seed", seed_override, "override init seed");
  sim->add_option("--out-dir", out_dir, "override output directory");

  auto* expo = app.add_subcommand("exponents", "index algebra and closure");
  bool optimize = false, prior_q0 = false;
  int table_n = 0;
  double ex_alpha = 0.85, ex_gamma = -1.0, ex_rho = 1e-6;
  double alpha_lo = 0.8, alpha_hi = 0.999999;
  std::string ex_format = "text";
  expo->add_flag("--optimize", optimize, "minimize the feasibility envelope");
  expo->add_option("--table", table_n, "emit a feasibility table with this many rows");
  expo->add_option("--alpha-lo", alpha_lo, "table lower alpha");
  expo->add_option("--alpha-hi", alpha_hi, "table upper alpha");
  expo->add_flag("--prior-q0", prior_q0, "print the vorticity integrability exponent");
  expo->add_option("--alpha", ex_alpha, "dissipation order");
  expo->add_option("--gamma", ex_gamma, "interpolation parameter, default the optimum");
  expo->add_option("--rho", ex_rho, "strictness margin");
  expo->add_option("--format", ex_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* ver = app.add_subcommand("verify", "check the layers against references");
  std::string suite = "all", fault;
  int ver_n = 128;
  std::uint64_t ver_seed = 17;
  ver->add_option("--suite", suite, "operators|lp|commutators|exponents|all");
  ver->add_option("--n", ver_n, "grid resolution");
  ver->add_option("--seed", ver_seed, "base seed");
  ver->add_option("--inject-fault", fault, "negative control (multiplier)");

  auto* sc = app.add_subcommand("scan", "rate and bracket data as CSV");
  std::string scan_kind = "commutator";
  int scan_n = 256, scan_seeds = 3, scan_kmin = 1, scan_kmax = 0, scan_trials = 50;
  std::uint64_t scan_seed0 = 101;
  std::vector<double> scan_alphas;
  sc->add_option("--kind", scan_kind, "commutator | bernstein");
  sc->add_option("--n", scan_n, "grid resolution");
  sc->add_option("--alpha", scan_alphas, "dissipation orders");
  sc->add_option("--seeds", scan_seeds, "number of random draws");
  sc->add_option("--seed0", scan_seed0, "base seed");
  sc->add_option("--k-min", scan_kmin, "lowest dyadic level");
  sc->add_option("--k-max", scan_kmax, "highest dyadic level, 0 = resolved maximum");
  sc->add_option("--trials", scan_trials, "bernstein trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, sets, seed_override, out_dir);
    if (expo->parsed()) {
      if (ex_gamma < 0.0) ex_gamma = fb::exponents::gamma0_closed();
      return cmd_exponents(optimize, table_n, alpha_lo, alpha_hi, prior_q0, ex_alpha,
                           ex_gamma, ex_rho, ex_format);
    }
    if (ver->parsed()) return cmd_verify(suite, ver_n, ver_seed, fault);
    if (sc->parsed())
      return cmd_scan(scan_kind, scan_n, scan_alphas, scan_seeds, scan_seed0,
                      scan_kmin, scan_kmax, scan_trials);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
