#include "fracbou/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracbou::exponents {

namespace {
constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::domain_error("gamma must lie in (0, 1/2)");
}
}  // namespace

double conjugate(double x) {
  if (!(x > 1.0)) throw std::domain_error("conjugate exponent needs x > 1");
  return x / (x - 1.0);
}

double alpha_cr_of_gamma(double gamma) {
  require_gamma(gamma);
  return (4.0 - 2.0 * gamma) / (5.0 - 2.0 * gamma);
}

double alpha_one(double gamma) {
  require_gamma(gamma);
  const double c2 = 6.0 * (1.0 - gamma);
  const double c1 = 1.0 - 7.0 * gamma;
  const double c0 = -4.0 * (1.0 - gamma);
  return (-c1 + std::sqrt(c1 * c1 - 4.0 * c2 * c0)) / (2.0 * c2);
}

double alpha_one_residual(double gamma) {
  const double a = alpha_one(gamma);
  return 6.0 * (1.0 - gamma) * a * a + (1.0 - 7.0 * gamma) * a - 4.0 * (1.0 - gamma);
}

double alpha_beta1_bound(double gamma) {
  require_gamma(gamma);
  return (12.0 * gamma + 2.0) / (3.0 - 6.0 * gamma);
}

double gamma0_closed() { return (43.0 - std::sqrt(1777.0)) / 36.0; }
double alpha_cr_closed() { return (std::sqrt(1777.0) - 23.0) / 24.0; }

ExponentAssignment make_assignment(double alpha, double gamma, double rho) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("assignment requires alpha in (0, 1)");
  require_gamma(gamma);
  if (!(rho >= 0.0)) throw std::domain_error("rho must be nonnegative");

  ExponentAssignment e{};
  e.alpha = alpha;
  e.beta = 1.0 - alpha;
  e.gamma = gamma;
  e.rho = rho;

  e.a = (2.0 / alpha) * ((1.0 - gamma) * (1.0 - alpha) + rho);
  e.b = 1.0 - (e.a + 3.0 * gamma) / alpha;
  e.beta1 = (12.0 / alpha) * ((1.0 - 2.0 * gamma) / 8.0 + (alpha - 2.0) / 12.0);

  e.inv_p1 = 5.0 / 6.0 - gamma;
  e.inv_p2 = (1.0 + 2.0 * e.a) / 6.0;
  e.inv_p3 = e.inv_p1 - e.inv_p2;
  e.p1 = 1.0 / e.inv_p1;
  e.p2 = 1.0 / e.inv_p2;
  e.p3 = 1.0 / e.inv_p3;

  // the same b recovered from the interpolation balance
  // 1/(4 p3) = b/6 + (1-b)(2-alpha)/12
  e.b_balance = (3.0 * e.inv_p3 - (2.0 - alpha)) / alpha;

  e.s_lo = (2.0 - gamma) * (1.0 - alpha);
  e.s_hi = alpha / 2.0;
  e.s = 0.5 * (e.s_lo + e.s_hi);
  e.s1 = (1.0 - alpha) / 2.0;
  e.s2_lo = 1.5 * (1.0 - alpha);
  e.s2_hi = alpha / 2.0;
  e.s2 = 0.5 * (e.s2_lo + e.s2_hi);

  e.a_in_01 = e.a > 0.0 && e.a < 1.0;
  e.b_in_01 = e.b > 0.0 && e.b < 1.0;
  e.beta1_in_01 = e.beta1 > 0.0 && e.beta1 < 1.0;
  e.s_window_nonempty = e.s_lo < e.s_hi;
  return e;
}

ClosureReport check_closure(const ExponentAssignment& e) {
  ClosureReport r;
  const bool conj_b_ok = e.b > -0.5 && e.b < 1.0;
  const bool conj_beta1_ok = e.beta1 > -0.5 && e.beta1 < 1.0;
  r.conjugates_defined = conj_b_ok && conj_beta1_ok;

  double gap = 0.0;

  // interpolation-product conditions: C * conj(3/(2(1-x))) <= 6
  if (conj_b_ok) {
    const double xp = conjugate(3.0 / (2.0 * (1.0 - e.b)));
    const double lhs = (2.0 - e.a + 4.0 * e.b) * xp;
    // algebra reduces the condition to a >= 0, so it holds identically
    r.conditions.push_back({"hi-product-b", lhs, 6.0, lhs <= 6.0 + 1e-12, e.a >= 0.0});
  } else {
    r.conditions.push_back({"hi-product-b", nan_d, 6.0, false, false});
  }
  if (conj_beta1_ok) {
    const double xp = conjugate(3.0 / (2.0 * (1.0 - e.beta1)));
    const double lhs = 4.0 * e.beta1 * xp;
    // reduces to 0 <= 2: always true on the valid range
    r.conditions.push_back({"hi-product-beta1", lhs, 6.0, lhs <= 6.0 + 1e-12, true});
  } else {
    r.conditions.push_back({"hi-product-beta1", nan_d, 6.0, false, false});
  }

  // low-product condition, dual route: conjugate arithmetic against the
  // expanded form (1 + 4/(3 alpha)) a + (2 + 4/alpha) gamma <= 2
  if (conj_b_ok) {
    const double xp = conjugate(3.0 / (2.0 * (1.0 - e.b)));
    const double lhs = (e.a + 2.0 * e.gamma) * xp;
    const double expanded =
        (1.0 + 4.0 / (3.0 * e.alpha)) * e.a + (2.0 + 4.0 / e.alpha) * e.gamma;
    gap = std::max(gap, std::abs((lhs - 2.0) - xp * (expanded - 2.0)));
    r.conditions.push_back({"lo-product-b", lhs, 2.0, lhs <= 2.0 + 1e-12, false});
  } else {
    r.conditions.push_back({"lo-product-b", nan_d, 2.0, false, false});
  }

  // low condition on beta1, dual route: conj(3/(2(1-beta1))) <= 2/(2 gamma + 1)
  // against beta1 >= (1 + 6 gamma)/4
  if (conj_beta1_ok) {
    const double lhs = conjugate(3.0 / (2.0 * (1.0 - e.beta1)));
    const double rhs = 2.0 / (2.0 * e.gamma + 1.0);
    const double r1 = lhs - rhs;
    const double r2 = (1.0 + 6.0 * e.gamma) / 4.0 - e.beta1;
    gap = std::max(gap, std::abs(r1 * (1.0 + 2.0 * e.beta1) * (2.0 * e.gamma + 1.0) / 4.0 - r2));
    r.conditions.push_back({"lo-product-beta1", lhs, rhs, lhs <= rhs + 1e-12, false});
  } else {
    r.conditions.push_back({"lo-product-beta1", nan_d, nan_d, false, false});
  }

  r.conditions.push_back({"s-window", e.s_lo, e.s_hi, e.s_window_nonempty, false});

  r.route_gap = gap;
  r.all_pass = true;
  for (const auto& c : r.conditions) r.all_pass = r.all_pass && c.satisfied;
  return r;
}

namespace {

double envelope(double gamma) {
  return std::max({alpha_one(gamma), alpha_beta1_bound(gamma), alpha_cr_of_gamma(gamma)});
}

template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
  const double R = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - R * (b - a);
  double x2 = a + R * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - R * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + R * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

OptimizeResult optimize_gamma() {
  const double lo = 1e-6, hi = 0.5 - 1e-6;

  // route 1: golden-section over the whole window
  const double g_direct = golden_min(envelope, lo, hi, 1e-14);

  // route 2: brute-force grid scan, then golden-section inside the bracket
  const int N = 10000;
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < N; ++i) {
    const double g = lo + (hi - lo) * (i + 0.5) / N;
    const double v = envelope(g);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double step = (hi - lo) / N;
  const double blo = std::max(lo, lo + (best - 1 + 0.5) * step);
  const double bhi = std::min(hi, lo + (best + 1 + 0.5) * step);
  const double g_grid = golden_min(envelope, blo, bhi, 1e-14);

  OptimizeResult r;
  r.gamma0 = g_grid;
  r.alpha_cr = envelope(g_grid);
  r.curve_alpha_one = alpha_one(g_grid);
  r.curve_beta1_bound = alpha_beta1_bound(g_grid);
  r.curve_s_window = alpha_cr_of_gamma(g_grid);
  r.grid_gs_gap = std::abs(g_grid - g_direct);
  r.gap_gamma = std::abs(r.gamma0 - gamma0_closed());
  r.gap_alpha = std::abs(r.alpha_cr - alpha_cr_closed());
  return r;
}

double q0_prior(double alpha) {
  if (!(alpha > 0.8 && alpha < 1.0))
    throw std::domain_error("q0 prior defined only for alpha in (4/5, 1)");
  return (8.0 - 4.0 * alpha) / (8.0 - 7.0 * alpha);
}

std::vector<FeasibilityRow> feasibility_table(double gamma, double rho, int count,
                                              double alpha_lo, double alpha_hi) {
  if (count < 2) throw std::invalid_argument("feasibility table needs at least 2 points");
  if (!(alpha_lo < alpha_hi))
    throw std::invalid_argument("feasibility table needs alpha_lo < alpha_hi");
  std::vector<FeasibilityRow> rows;
  rows.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double alpha = alpha_lo + (alpha_hi - alpha_lo) * i / double(count - 1);
    ExponentAssignment e = make_assignment(alpha, gamma, rho);
    ClosureReport c = check_closure(e);
    rows.push_back({alpha, e.a, e.b, e.beta1,
                    e.a_in_01 && e.b_in_01 && e.beta1_in_01, c.all_pass});
  }
  return rows;
}

}  // namespace fracbou::exponents
