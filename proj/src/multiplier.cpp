#include "fracbou/multiplier.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fracbou/kernels.hpp"
#include "fracbou/norms.hpp"

namespace fracbou {

namespace testhooks {
namespace {
bool g_fault = false;
}
void set_multiplier_fault(bool on) { g_fault = on; }
bool multiplier_fault() { return g_fault; }
}  // namespace testhooks

namespace {

void reject_mean(const SpectralField& f, const char* what) {
  const double mean = std::abs(f.mean());
  const double amp = l2_via_parseval(f) / f.grid().length();
  if (mean > 1e-10 * std::max(amp, 1e-300))
    throw std::domain_error(std::string(what) + " undefined on non-mean-zero field");
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& spec) {
  if (!spec.symbol) throw std::invalid_argument("multiplier symbol not set");
  const SpectralGrid& g = f.grid();
  const std::size_t ms = g.spec_size();
  std::vector<double> table(2 * ms);
  const auto& k1 = g.kx1();
  const auto& k2 = g.kx2();
  for (std::size_t m = 0; m < ms; ++m) {
    std::complex<double> v = spec.symbol(k1[m], k2[m]);
    table[2 * m] = v.real();
    table[2 * m + 1] = v.imag();
  }
  switch (spec.zero_mode) {
    case ZeroMode::annihilate:
      table[0] = table[1] = 0.0;
      break;
    case ZeroMode::identity:
      table[0] = 1.0;
      table[1] = 0.0;
      break;
    case ZeroMode::error:
      reject_mean(f, "multiplier with zero_mode=error");
      table[0] = table[1] = 0.0;
      break;
  }
  SpectralField out(f.grid_ptr());
  std::memcpy(out.spec_mut(), f.spec(), 2 * ms * sizeof(double));
  kernels::cmul_ctable(out.spec_mut(), table.data(), ms);
  return out;
}

std::vector<double> lambda_pow_table(const SpectralGrid& g, double s) {
  const std::size_t ms = g.spec_size();
  std::vector<double> t(ms);
  const auto& ka = g.kabs();
  if (s == 0.0) {
    std::fill(t.begin(), t.end(), 1.0);
    return t;
  }
  for (std::size_t m = 0; m < ms; ++m) t[m] = std::pow(ka[m], s);
  t[0] = 0.0;  // |k| = 0: annihilated for s < 0, already 0 for s > 0
  if (testhooks::multiplier_fault() && ms > 2) t[2] *= 1.001;
  return t;
}

std::vector<double> semigroup_table(const SpectralGrid& g, double coef, double s) {
  const std::size_t ms = g.spec_size();
  std::vector<double> t(ms);
  const auto& ka = g.kabs();
  for (std::size_t m = 0; m < ms; ++m) t[m] = std::exp(-coef * std::pow(ka[m], s));
  t[0] = 1.0;  // |0|^s = 0 for s > 0: the mean is not damped
  return t;
}

SpectralField apply_table(const SpectralField& f, const std::vector<double>& t) {
  const std::size_t ms = f.grid().spec_size();
  if (t.size() != ms) throw std::invalid_argument("symbol table size does not match grid");
  SpectralField out(f.grid_ptr());
  kernels::cmul_rtable_to(out.spec_mut(), f.spec(), t.data(), ms);
  return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double s, ZeroMode zm) {
  if (s < -2.0 || s > 2.0)
    throw std::domain_error("fractional_laplacian order must lie in [-2, 2]");
  if (zm == ZeroMode::error && s != 0.0) reject_mean(f, "fractional_laplacian");
  std::vector<double> t = lambda_pow_table(f.grid(), s);  // Lambda^0 = identity
  if (zm == ZeroMode::identity) t[0] = 1.0;
  return apply_table(f, t);
}

SpectralField lambda_d1(const SpectralField& f, double s) {
  const SpectralGrid& g = f.grid();
  const std::size_t ms = g.spec_size();
  std::vector<double> t = lambda_pow_table(g, s);
  const auto& k1 = g.kx1();
  for (std::size_t m = 0; m < ms; ++m) t[m] *= k1[m];
  SpectralField out(f.grid_ptr());
  kernels::cmul_deriv(out.spec_mut(), f.spec(), t.data(), ms);
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("derivative axis must be 1 or 2");
  const SpectralGrid& g = f.grid();
  const auto& k = (axis == 1) ? g.kx1() : g.kx2();
  SpectralField out(f.grid_ptr());
  kernels::cmul_deriv(out.spec_mut(), f.spec(), k.data(), g.spec_size());
  return out;
}

FlowVelocity biot_savart(const SpectralField& omega) {
  const SpectralGrid& g = omega.grid();
  const std::size_t ms = g.spec_size();
  const double amp = l2_via_parseval(omega) / g.length();
  const bool dropped = std::abs(omega.mean()) > 1e-12 * std::max(amp, 1e-300);

  std::vector<double> inv_lap(ms);
  const auto& ka2 = g.kabs2();
  inv_lap[0] = 0.0;
  for (std::size_t m = 1; m < ms; ++m) inv_lap[m] = -1.0 / ka2[m];

  SpectralField psi = apply_table(omega, inv_lap);
  const auto& k1 = g.kx1();
  const auto& k2 = g.kx2();
  std::vector<double> mk2(ms);
  for (std::size_t m = 0; m < ms; ++m) mk2[m] = -k2[m];

  SpectralField u1(omega.grid_ptr()), u2(omega.grid_ptr());
  kernels::cmul_deriv(u1.spec_mut(), psi.spec(), mk2.data(), ms);       // -d2 psi
  kernels::cmul_deriv(u2.spec_mut(), psi.spec(), k1.data(), ms);        // d1 psi
  return {std::move(u1), std::move(u2), std::move(psi), dropped};
}

SpectralField dealias(const SpectralField& f) {
  return apply_table(f, f.grid().dealias_mask());
}

SpectralField advect(const FlowVelocity& u, const SpectralField& f) {
  SpectralField d1 = derivative(f, 1);
  SpectralField d2 = derivative(f, 2);
  SpectralField out(f.grid_ptr());
  kernels::mul_add_pair(out.phys_mut(), u.u1.phys(), d1.phys(), u.u2.phys(), d2.phys(),
                        f.grid().phys_size());
  return dealias(out);
}

}  // namespace fracbou
