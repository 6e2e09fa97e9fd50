#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "fracbou/exponents.hpp"

using namespace fracbou::exponents;

namespace {

// independent root finder used to freeze oracle values
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  REQUIRE(flo * f(hi) < 0.0);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("holder conjugate") {
  CHECK(conjugate(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(conjugate(3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(conjugate(1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(conjugate(conjugate(7.3)) == doctest::Approx(7.3).epsilon(1e-13));
  CHECK_THROWS_AS(conjugate(1.0), std::domain_error);
  CHECK_THROWS_AS(conjugate(0.5), std::domain_error);
}

TEST_CASE("critical point against an independent bisection") {
  // the two binding curves cross where
  // (4-2g)(3-6g) = (12g+2)(5-2g), i.e. 18g^2 - 43g + 1 = 0
  auto cross = [](double g) {
    return (4.0 - 2.0 * g) * (3.0 - 6.0 * g) - (12.0 * g + 2.0) * (5.0 - 2.0 * g);
  };
  double g_oracle = bisect(cross, 1e-6, 0.1);
  CHECK(gamma0_closed() == doctest::Approx(g_oracle).epsilon(1e-12));
  CHECK(alpha_cr_closed() ==
        doctest::Approx(alpha_cr_of_gamma(g_oracle)).epsilon(1e-12));

  // frozen decimal expansions
  CHECK(gamma0_closed() == doctest::Approx(0.0234867273134449).epsilon(1e-12));
  CHECK(alpha_cr_closed() == doctest::Approx(0.7981032423631660).epsilon(1e-12));
  CHECK(std::fabs(alpha_cr_closed() - (std::sqrt(1777.0) - 23.0) / 24.0) < 1e-15);
  CHECK(std::fabs(gamma0_closed() - (43.0 - std::sqrt(1777.0)) / 36.0) < 1e-15);

  // at the crossing the two curves agree and the quadratic curve sits below
  double g0 = gamma0_closed();
  CHECK(alpha_cr_of_gamma(g0) == doctest::Approx(alpha_beta1_bound(g0)).epsilon(1e-12));
  CHECK(alpha_one(g0) < alpha_cr_closed());
}

TEST_CASE("quadratic curve against an independent bisection") {
  // 6(1-g)a^2 + (1-7g)a - 4(1-g) = 0, positive root; at g -> 0 the root is
  // (-1+sqrt(97))/12
  for (double g : {1e-9, 0.01, 0.0234867273134449, 0.1, 0.3}) {
    auto quad = [g](double a) {
      return 6.0 * (1.0 - g) * a * a + (1.0 - 7.0 * g) * a - 4.0 * (1.0 - g);
    };
    double a_oracle = bisect(quad, 0.1, 2.0);
    CHECK(alpha_one(g) == doctest::Approx(a_oracle).epsilon(1e-12));
    CHECK(std::fabs(alpha_one_residual(g)) < 1e-12);
  }
  CHECK(alpha_one(1e-12) == doctest::Approx(0.7374048168163420).epsilon(1e-9));
  CHECK((-1.0 + std::sqrt(97.0)) / 12.0 == doctest::Approx(0.7374048168163420).epsilon(1e-15));
}

TEST_CASE("assignment algebra") {
  const double alpha = 0.85, gamma = 0.05, rho = 1e-6;
  auto e = make_assignment(alpha, gamma, rho);
  CHECK(e.alpha == alpha);
  CHECK(e.beta == doctest::Approx(1.0 - alpha).epsilon(1e-15));
  CHECK(e.a == doctest::Approx((2.0 / alpha) * ((1.0 - gamma) * (1.0 - alpha) + rho))
                   .epsilon(1e-14));
  CHECK(e.b == doctest::Approx(1.0 - (e.a + 3.0 * gamma) / alpha).epsilon(1e-14));
  CHECK(e.b == doctest::Approx(e.b_balance).epsilon(1e-12));
  CHECK(e.beta1 ==
        doctest::Approx((12.0 / alpha) * ((1.0 - 2.0 * gamma) / 8.0 + (alpha - 2.0) / 12.0))
            .epsilon(1e-14));
  CHECK(e.inv_p1 == doctest::Approx(5.0 / 6.0 - gamma).epsilon(1e-14));
  CHECK(e.inv_p2 == doctest::Approx((1.0 + 2.0 * e.a) / 6.0).epsilon(1e-14));
  CHECK(e.inv_p3 == doctest::Approx(e.inv_p1 - e.inv_p2).epsilon(1e-14));
  CHECK(e.inv_p3 == doctest::Approx((2.0 - e.a) / 3.0 - gamma).epsilon(1e-12));
  CHECK(e.p1 == doctest::Approx(1.0 / e.inv_p1).epsilon(1e-13));
  CHECK(e.p2 == doctest::Approx(1.0 / e.inv_p2).epsilon(1e-13));
  CHECK(e.p3 == doctest::Approx(1.0 / e.inv_p3).epsilon(1e-13));
  CHECK(e.s_lo == doctest::Approx((2.0 - gamma) * (1.0 - alpha)).epsilon(1e-14));
  CHECK(e.s_hi == doctest::Approx(alpha / 2.0).epsilon(1e-15));
  CHECK(e.s_window_nonempty);
  CHECK(e.s > e.s_lo);
  CHECK(e.s < e.s_hi);
  CHECK(e.s1 == doctest::Approx((1.0 - alpha) / 2.0).epsilon(1e-15));
  CHECK(e.s2_lo == doctest::Approx(1.5 * (1.0 - alpha)).epsilon(1e-14));
  CHECK(e.s2_hi == doctest::Approx(alpha / 2.0).epsilon(1e-15));
  CHECK(e.a_in_01);
  CHECK(e.b_in_01);
  CHECK(e.beta1_in_01);

  CHECK_THROWS_AS(make_assignment(1.2, 0.05), std::domain_error);
  CHECK_THROWS_AS(make_assignment(0.0, 0.05), std::domain_error);
  CHECK_THROWS_AS(make_assignment(0.85, 0.6), std::domain_error);
  CHECK_THROWS_AS(make_assignment(0.85, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_assignment(0.85, 0.05, -1.0), std::domain_error);
}

TEST_CASE("closure conditions hold above critical and break below") {
  const double g0 = gamma0_closed();
  auto good = check_closure(make_assignment(0.85, g0, 1e-6));
  CHECK(good.all_pass);
  CHECK(good.conjugates_defined);
  CHECK(good.route_gap < 1e-12);
  CHECK(!good.conditions.empty());
  for (const auto& c : good.conditions) CHECK(c.satisfied);

  // marginally above the critical exponent with vanishing margin
  auto edge = check_closure(make_assignment(alpha_cr_closed() + 1e-9, g0, 0.0));
  CHECK(edge.all_pass);
  CHECK(edge.route_gap < 1e-10);

  // below it the s-window closes
  auto bad = make_assignment(alpha_cr_closed() - 1e-3, g0, 0.0);
  CHECK(!bad.s_window_nonempty);
  auto rep = check_closure(bad);
  CHECK(!rep.all_pass);

  // the dual-route identities hold across a sweep
  for (double alpha = 0.81; alpha < 0.99; alpha += 0.017) {
    auto r = check_closure(make_assignment(alpha, g0, 1e-6));
    CHECK(r.route_gap < 1e-11);
  }
}

TEST_CASE("gamma optimization lands on the closed forms") {
  auto opt = optimize_gamma();
  CHECK(opt.gamma0 == doctest::Approx(gamma0_closed()).epsilon(1e-8));
  CHECK(opt.alpha_cr == doctest::Approx(alpha_cr_closed()).epsilon(1e-8));
  CHECK(opt.grid_gs_gap < 1e-8);
  CHECK(opt.gap_gamma < 1e-7);
  CHECK(opt.gap_alpha < 1e-8);
  CHECK(opt.curve_s_window == doctest::Approx(opt.curve_beta1_bound).epsilon(1e-6));
  CHECK(opt.curve_alpha_one < opt.alpha_cr);
}

TEST_CASE("integrability prior for the vorticity") {
  CHECK(q0_prior(0.9) == doctest::Approx(2.588235294117647).epsilon(1e-14));
  CHECK(q0_prior(0.9) == doctest::Approx((8.0 - 4.0 * 0.9) / (8.0 - 7.0 * 0.9)).epsilon(1e-15));
  for (int i = 1; i < 100; ++i) {
    double alpha = 0.8 + 0.2 * i / 100.0;
    double q = q0_prior(alpha);
    CHECK(q > 2.0);
    CHECK(q < 4.0);
  }
  CHECK_THROWS_AS(q0_prior(0.75), std::domain_error);
  CHECK_THROWS_AS(q0_prior(1.0), std::domain_error);
}

TEST_CASE("feasibility sweep above the critical exponent") {
  const double g0 = gamma0_closed();
  auto rows = feasibility_table(g0, 1e-6, 50, alpha_cr_closed() + 1e-6, 1.0 - 1e-6);
  CHECK(rows.size() == 50);
  for (const auto& r : rows) {
    CHECK(r.ranges_ok);
    CHECK(r.closure_ok);
    CHECK(r.a > 0.0);
    CHECK(r.a < 1.0);
    CHECK(r.b > 0.0);
    CHECK(r.b < 1.0);
    CHECK(r.beta1 > 0.0);
    CHECK(r.beta1 < 1.0);
  }

  // vanishing-margin rows just above the boundary
  auto edge = feasibility_table(g0, 0.0, 2, alpha_cr_closed() + 1e-9, alpha_cr_closed() + 1e-3);
  CHECK(edge.front().closure_ok);

  CHECK_THROWS_AS(feasibility_table(g0, 0.0, 1, 0.81, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(feasibility_table(g0, 0.0, 5, 0.9, 0.85), std::invalid_argument);
}
