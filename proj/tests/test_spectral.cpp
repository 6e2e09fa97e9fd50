#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "fracbou/field.hpp"
#include "fracbou/grid.hpp"
#include "fracbou/multiplier.hpp"
#include "fracbou/norms.hpp"

using namespace fracbou;

namespace {

const double inf = std::numeric_limits<double>::infinity();

SpectralField sampled(const GridPtr& g, double (*fn)(double, double)) {
  const int n = g->n();
  const double h = g->spacing();
  std::vector<double> v(g->phys_size());
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) v[std::size_t(i1) * n + i2] = fn(i1 * h, i2 * h);
  return SpectralField::from_physical(g, v);
}

SpectralField random_field(const GridPtr& g, std::uint64_t seed, bool zero_mean = false) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(g->phys_size());
  for (auto& x : v) x = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
  auto f = SpectralField::from_physical(g, v);
  if (zero_mean) {
    double* s = f.spec_mut();
    s[0] = 0.0;
    s[1] = 0.0;
  }
  return f;
}

double max_phys_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0;
  const double* pa = a.phys();
  const double* pb = b.phys();
  for (std::size_t i = 0; i < a.grid().phys_size(); ++i)
    m = std::max(m, std::fabs(pa[i] - pb[i]));
  return m;
}

}  // namespace

TEST_CASE("transform round trip") {
  for (int n : {16, 32, 128}) {
    auto g = SpectralGrid::create(n);
    auto f = random_field(g, 101 + n);
    std::vector<double> orig(f.phys(), f.phys() + g->phys_size());
    const double* s = f.spec();
    std::vector<std::complex<double>> coeffs(g->spec_size());
    for (std::size_t m = 0; m < coeffs.size(); ++m) coeffs[m] = {s[2 * m], s[2 * m + 1]};
    auto back = SpectralField::from_spectral(g, coeffs);
    const double* p = back.phys();
    double worst = 0;
    for (std::size_t i = 0; i < g->phys_size(); ++i)
      worst = std::max(worst, std::fabs(p[i] - orig[i]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("plane waves are exact eigenfunctions") {
  auto g = SpectralGrid::create(64);
  // f = cos(3 x1 + 2 x2): Lambda^s f = 13^{s/2} f, d1 f = -3 sin(...)
  auto f = sampled(g, [](double x, double y) { return std::cos(3 * x + 2 * y); });
  const double lam = std::sqrt(13.0);
  for (double s : {0.5, 1.0, 1.37, -1.0}) {
    auto Lf = fractional_laplacian(f, s, ZeroMode::annihilate);
    const double* p = Lf.phys();
    const double fac = std::pow(lam, s);
    const int n = g->n();
    const double h = g->spacing();
    double worst = 0;
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        double want = fac * std::cos(3 * (i1 * h) + 2 * (i2 * h));
        worst = std::max(worst, std::fabs(p[std::size_t(i1) * n + i2] - want));
      }
    CHECK(worst < 1e-12 * std::max(1.0, fac));
  }
  auto dx = derivative(f, 1);
  auto want = sampled(g, [](double x, double y) { return -3.0 * std::sin(3 * x + 2 * y); });
  CHECK(max_phys_diff(dx, want) < 1e-12);
  auto dy = derivative(f, 2);
  auto want2 = sampled(g, [](double x, double y) { return -2.0 * std::sin(3 * x + 2 * y); });
  CHECK(max_phys_diff(dy, want2) < 1e-12);
}

TEST_CASE("fractional laplacian composes additively") {
  auto g = SpectralGrid::create(64);
  auto f = random_field(g, 7, true);
  auto a = fractional_laplacian(fractional_laplacian(f, 0.4), 0.35);
  auto b = fractional_laplacian(f, 0.75);
  double scale = lebesgue_norm(b, 2.0);
  CHECK(max_phys_diff(a, b) < 1e-11 * std::max(1.0, scale));

  // Lambda^{-s} inverts Lambda^s on mean-free fields
  auto inv = fractional_laplacian(fractional_laplacian(f, 0.85), -0.85);
  CHECK(max_phys_diff(inv, f) < 1e-11);
}

TEST_CASE("zero mode policies") {
  auto g = SpectralGrid::create(32);
  auto f = sampled(g, [](double x, double) { return 2.5 + std::cos(x); });
  CHECK(f.mean() == doctest::Approx(2.5).epsilon(1e-13));

  auto killed = fractional_laplacian(f, 0.5, ZeroMode::annihilate);
  CHECK(std::fabs(killed.mean()) < 1e-13);

  auto kept = fractional_laplacian(f, 0.5, ZeroMode::identity);
  CHECK(kept.mean() == doctest::Approx(2.5).epsilon(1e-13));

  CHECK_THROWS_AS(fractional_laplacian(f, -0.5, ZeroMode::error), std::domain_error);
  auto mean_free = sampled(g, [](double x, double) { return std::cos(x); });
  CHECK_NOTHROW(fractional_laplacian(mean_free, -0.5, ZeroMode::error));
}

TEST_CASE("smoothed derivative Lambda^{-a} d1") {
  auto g = SpectralGrid::create(64);
  // cos(2 x1) -> Lambda^{-a} d1 gives -2^{1-a} sin(2 x1)
  auto f = sampled(g, [](double x, double) { return std::cos(2 * x); });
  double a = 0.85;
  auto Rf = lambda_d1(f, -a);
  const double want_fac = -std::pow(2.0, 1.0 - a);
  const int n = g->n();
  const double h = g->spacing();
  const double* p = Rf.phys();
  double worst = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      worst = std::max(worst,
                       std::fabs(p[std::size_t(i1) * n + i2] - want_fac * std::sin(2 * i1 * h)));
  CHECK(worst < 1e-12);

  // the zero mode is annihilated by the k1 factor regardless of the mean
  auto with_mean = sampled(g, [](double x, double) { return 1.0 + std::cos(2 * x); });
  auto Rm = lambda_d1(with_mean, -a);
  CHECK(max_phys_diff(Rm, Rf) < 1e-12);
}

TEST_CASE("velocity recovery from vorticity") {
  auto g = SpectralGrid::create(64);
  // omega = sin x1  =>  u = (0, -cos x1)
  auto w = sampled(g, [](double x, double) { return std::sin(x); });
  auto U = biot_savart(w);
  CHECK(!U.mean_dropped);
  auto want2 = sampled(g, [](double x, double) { return -std::cos(x); });
  CHECK(lebesgue_norm(U.u1, inf) < 1e-13);
  CHECK(max_phys_diff(U.u2, want2) < 1e-13);

  // divergence-free and curl recovers omega, for a generic mean-free field
  auto wr = random_field(g, 23, true);
  auto V = biot_savart(wr);
  auto div = SpectralField(g);
  {
    auto d1 = derivative(V.u1, 1);
    auto d2 = derivative(V.u2, 2);
    const double* a = d1.phys();
    const double* b = d2.phys();
    double* o = div.phys_mut();
    for (std::size_t i = 0; i < g->phys_size(); ++i) o[i] = a[i] + b[i];
  }
  CHECK(lebesgue_norm(div, inf) < 1e-9);
  auto curl = SpectralField(g);
  {
    auto d1 = derivative(V.u2, 1);
    auto d2 = derivative(V.u1, 2);
    const double* a = d1.phys();
    const double* b = d2.phys();
    double* o = curl.phys_mut();
    for (std::size_t i = 0; i < g->phys_size(); ++i) o[i] = a[i] - b[i];
  }
  CHECK(max_phys_diff(curl, wr) < 1e-9);

  auto with_mean = sampled(g, [](double x, double) { return 0.5 + std::sin(x); });
  auto M = biot_savart(with_mean);
  CHECK(M.mean_dropped);
}

TEST_CASE("dealias removes high modes only") {
  auto g = SpectralGrid::create(32);
  // k = (15, 0) is beyond the 2/3 cutoff (n/3 = 10); k = (3, 0) survives
  auto f = sampled(g, [](double x, double) { return std::cos(15 * x) + std::cos(3 * x); });
  auto d = dealias(f);
  auto want = sampled(g, [](double x, double) { return std::cos(3 * x); });
  CHECK(max_phys_diff(d, want) < 1e-13);
}

TEST_CASE("parseval identity ties physical and spectral norms") {
  for (int n : {32, 64}) {
    auto g = SpectralGrid::create(n);
    auto f = random_field(g, 31 + n);
    double phys = lebesgue_norm(f, 2.0);
    double spec = l2_via_parseval(f);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-10));
  }
}

TEST_CASE("hermitian residual and symmetrization") {
  auto g = SpectralGrid::create(32);
  auto f = random_field(g, 5);
  CHECK(hermitian_residual(f) < 1e-10);
  // break the symmetry on the k2 = 0 column by hand, then repair it
  const std::size_t row1_re = 2 * std::size_t(1) * (g->n() / 2 + 1);
  f.spec_mut()[row1_re + 1] += 100.0;
  CHECK(hermitian_residual(f) > 1.0);
  hermitian_symmetrize(f);
  CHECK(hermitian_residual(f) < 1e-12);
}

TEST_CASE("lebesgue norms against closed forms") {
  auto g = SpectralGrid::create(64);
  auto f = sampled(g, [](double x, double) { return std::sin(x); });
  const double L = two_pi;
  // torus integrals of sin^p x1: p=2 -> L^2/2, p=4 -> 3L^2/8, p=6 -> 5L^2/16
  CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(std::sqrt(L * L / 2.0)).epsilon(1e-12));
  CHECK(lebesgue_norm(f, 4.0) ==
        doctest::Approx(std::pow(3.0 / 8.0 * L * L, 0.25)).epsilon(1e-12));
  const double l6_sixth = 5.0 / 16.0 * L * L;
  CHECK(l6_sixth == doctest::Approx(12.337005501361697).epsilon(1e-15));
  CHECK(lebesgue_norm(f, 6.0) == doctest::Approx(std::pow(l6_sixth, 1.0 / 6.0)).epsilon(1e-12));
  CHECK(lebesgue_norm(f, inf) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(lebesgue_norm(f, 0.5), std::domain_error);
}

TEST_CASE("dissipation seminorm via spectral weights") {
  auto g = SpectralGrid::create(64);
  auto f = sampled(g, [](double x, double y) { return std::cos(3 * x + 2 * y); });
  // lambda_sq_norm(f, s) = ||Lambda^{s/2} f||^2 = 13^{s/2} L^2/2 here
  for (double s : {0.15, 0.5, 0.9}) {
    double want = std::pow(13.0, 0.5 * s) * two_pi * two_pi / 2.0;
    CHECK(lambda_sq_norm(f, s) == doctest::Approx(want).epsilon(1e-11));
  }
  CHECK(lambda_sq_norm(f, 0.0) == doctest::Approx(two_pi * two_pi / 2.0).epsilon(1e-11));
  // the mean participates only at s = 0
  auto c = sampled(g, [](double, double) { return 3.0; });
  CHECK(lambda_sq_norm(c, 0.5) == doctest::Approx(0.0));
  CHECK(lambda_sq_norm(c, 0.0) == doctest::Approx(9.0 * two_pi * two_pi).epsilon(1e-12));
}

TEST_CASE("multiplier application is linear") {
  auto g = SpectralGrid::create(32);
  auto f = random_field(g, 41, true);
  auto h = random_field(g, 43, true);
  auto combo = SpectralField(g);
  {
    const double* a = f.phys();
    const double* b = h.phys();
    double* o = combo.phys_mut();
    for (std::size_t i = 0; i < g->phys_size(); ++i) o[i] = 2.0 * a[i] - 0.5 * b[i];
  }
  double s = 0.6;
  auto Lc = fractional_laplacian(combo, s);
  auto Lf = fractional_laplacian(f, s);
  auto Lh = fractional_laplacian(h, s);
  double worst = 0;
  const double* pa = Lc.phys();
  const double* pb = Lf.phys();
  const double* pc = Lh.phys();
  for (std::size_t i = 0; i < g->phys_size(); ++i)
    worst = std::max(worst, std::fabs(pa[i] - (2.0 * pb[i] - 0.5 * pc[i])));
  CHECK(worst < 1e-11);
}

TEST_CASE("semigroup table matches the symbol") {
  auto g = SpectralGrid::create(32);
  auto t = semigroup_table(*g, 0.02, 0.85);
  CHECK(t[0] == 1.0);
  const auto& kk = g->kabs();
  for (std::size_t m = 1; m < g->spec_size(); ++m)
    CHECK(t[m] == doctest::Approx(std::exp(-0.02 * std::pow(kk[m], 0.85))).epsilon(1e-14));
}

TEST_CASE("general symbol path agrees with the table path") {
  auto g = SpectralGrid::create(32);
  auto f = random_field(g, 59, true);
  MultiplierSpec spec;
  spec.symbol = [](double k1, double k2) {
    double kk = std::hypot(k1, k2);
    return std::complex<double>(std::pow(kk, 0.6), 0.0);
  };
  auto via_spec = apply_multiplier(f, spec);
  auto via_table = fractional_laplacian(f, 0.6);
  CHECK(max_phys_diff(via_spec, via_table) < 1e-12);
}

TEST_CASE("grid rejects bad parameters") {
  CHECK_THROWS_AS(SpectralGrid::create(6), std::invalid_argument);
  CHECK_THROWS_AS(SpectralGrid::create(33), std::invalid_argument);
  CHECK_THROWS_AS(SpectralGrid::create(32, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(fractional_laplacian(SpectralField(SpectralGrid::create(16)), 2.5),
                  std::domain_error);
}
