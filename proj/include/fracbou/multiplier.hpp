#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "fracbou/field.hpp"

// Fourier multiplier operators. The general path takes an arbitrary symbol
// k -> m(k); the common fixed-symbol operators (fractional Laplacian, spectral
// derivatives, Biot-Savart, dealiasing, dissipation semigroups) have direct
// entry points built on precomputed tables.

namespace fracbou {

enum class ZeroMode { annihilate, identity, error };

struct MultiplierSpec {
  // evaluated at scaled wavenumbers (k1, k2)
  std::function<std::complex<double>(double, double)> symbol;
  ZeroMode zero_mode = ZeroMode::annihilate;
};

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& spec);

// Lambda^s = (-Laplacian)^{s/2}; s in [-2, 2].  s = 0 is the identity.  For
// s != 0 the k = 0 mode follows the policy (annihilate keeps the mean out,
// error rejects fields that carry one).
SpectralField fractional_laplacian(const SpectralField& f, double s,
                                   ZeroMode zm = ZeroMode::annihilate);

// Lambda^s d/dx1; the zero mode vanishes identically since k1 = 0 there
SpectralField lambda_d1(const SpectralField& f, double s);

SpectralField derivative(const SpectralField& f, int axis);  // axis 1 or 2

struct FlowVelocity {
  SpectralField u1, u2, psi;
  bool mean_dropped;  // true when the vorticity carried a mean that was removed
};

// u = (-d2 psi, d1 psi) with Laplacian psi = omega
FlowVelocity biot_savart(const SpectralField& omega);

SpectralField dealias(const SpectralField& f);

// u . grad f with the product dealiased
SpectralField advect(const FlowVelocity& u, const SpectralField& f);

// real symbol tables over the stored modes
std::vector<double> lambda_pow_table(const SpectralGrid& g, double s);
// exp(-coef * |k|^s)
std::vector<double> semigroup_table(const SpectralGrid& g, double coef, double s);
SpectralField apply_table(const SpectralField& f, const std::vector<double>& t);

namespace testhooks {
// verification negative control: perturbs the fractional_laplacian symbol
void set_multiplier_fault(bool on);
bool multiplier_fault();
}  // namespace testhooks

}  // namespace fracbou
