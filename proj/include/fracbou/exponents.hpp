#pragma once
#include <string>
#include <vector>

// Exponent bookkeeping for the endpoint regularity argument: given the
// dissipation split alpha (vorticity) / beta = 1 - alpha (temperature) and the
// auxiliary parameters gamma (Lebesgue-index shift) and rho (strictness
// margin), build the full index assignment, evaluate every closure condition,
// and optimize gamma down to the critical alpha.
//
// Closed forms the optimizer must reproduce:
//   gamma0   = (43 - sqrt(1777)) / 36
//   alpha_cr = (sqrt(1777) - 23) / 24 = 0.798103...

namespace fracbou::exponents {

double conjugate(double x);  // x/(x-1); domain x > 1

// the three gamma-curves whose upper envelope is minimized
double alpha_cr_of_gamma(double gamma);     // (4-2g)/(5-2g); empty s-window below it
double alpha_one(double gamma);             // positive root of 6(1-g)a^2+(1-7g)a-4(1-g)
double alpha_one_residual(double gamma);    // that quadratic at the returned root
double alpha_beta1_bound(double gamma);     // (12g+2)/(3-6g)

double gamma0_closed();
double alpha_cr_closed();

struct ExponentAssignment {
  double alpha, beta, gamma, rho;
  double a;            // (2/alpha)((1-gamma)(1-alpha) + rho)
  double b;            // 1 - (a + 3*gamma)/alpha
  double b_balance;    // same quantity recovered from the p3 interpolation balance
  double beta1;        // (12/alpha)((1-2gamma)/8 + (alpha-2)/12)
  double inv_p1, inv_p2, inv_p3;  // 1/p1 = 5/6-gamma, 1/p2 = (1+2a)/6, difference
  double p1, p2, p3;
  double s_lo, s_hi, s;     // window ((2-gamma)(1-alpha), alpha/2), midpoint pick
  double s1;                // (1-alpha)/2
  double s2_lo, s2_hi, s2;  // (3(1-alpha)/2, alpha/2), midpoint pick
  bool a_in_01, b_in_01, beta1_in_01, s_window_nonempty;
};

// alpha in (0,1), gamma in (0,1/2), rho >= 0 (rho = 0 is the closure limit)
ExponentAssignment make_assignment(double alpha, double gamma, double rho = 1e-6);

struct ClosureCondition {
  std::string name;
  double lhs, rhs;
  bool satisfied;
  bool identically;  // true if algebra alone settles it for the valid range
};

struct ClosureReport {
  std::vector<ClosureCondition> conditions;
  bool all_pass = false;
  bool conjugates_defined = false;
  // worst disagreement between the conjugate-exponent route and the expanded
  // algebraic route across the dual-checked conditions
  double route_gap = 0.0;
};

ClosureReport check_closure(const ExponentAssignment& e);

struct OptimizeResult {
  double gamma0, alpha_cr;
  double curve_alpha_one, curve_beta1_bound, curve_s_window;  // at gamma0
  double grid_gs_gap;          // two optimizer routes against each other
  double gap_gamma, gap_alpha; // against the closed forms
};

// envelope minimization: golden-section over the whole window and a second
// golden-section seeded from a 10^4-point grid scan; both routes must land on
// the same point
OptimizeResult optimize_gamma();

double q0_prior(double alpha);  // (8-4a)/(8-7a); domain alpha in (4/5, 1)

struct FeasibilityRow {
  double alpha, a, b, beta1;
  bool ranges_ok, closure_ok;
};

std::vector<FeasibilityRow> feasibility_table(double gamma, double rho, int count,
                                              double alpha_lo, double alpha_hi);

}  // namespace fracbou::exponents
