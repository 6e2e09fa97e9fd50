#pragma once
#include <vector>

#include "fracbou/field.hpp"
#include "fracbou/multiplier.hpp"

// Dyadic frequency decomposition on the lattice. Block j lives on the open
// annulus (2^{j-1}, 2^{j+1}) in scaled wavenumber; the symbols form an exact
// partition of unity at every lattice point, with a low-frequency piece Psi
// completing the inhomogeneous family.
//
// Radial profile: bump(t) = m(2-t)*m(t-1/2) with m(x) = exp(-1/x) on x > 0,
// normalized by the dyadic-scale-invariant denominator, so the scaling
// identity Phi_j(xi) = Phi_0(2^{-j} xi) holds exactly in floating point.

namespace fracbou::lp {

double bump(double t);                  // un-normalized radial profile
double block_symbol(int j, double t);   // Phi_j at radius t
double low_symbol(double t);            // Psi at radius t

class DyadicFamily {
 public:
  // j_max is the largest block whose annulus is fully resolved:
  // 2^{j_max+1} <= Nyquist.  Blocks above j_max up to j_cover() still exist so
  // that reconstruction is exact over the whole lattice.
  static DyadicFamily build(GridPtr grid, int j_max);

  int j_max() const { return j_max_; }
  int j_low() const { return j_low_; }
  int j_cover() const { return j_cover_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const SpectralGrid& grid() const { return *grid_; }

  const std::vector<double>& block_table(int j) const;  // j in [j_low, j_cover]
  const std::vector<double>& low_table() const { return low_; }

  double partition_residual() const;      // inhomogeneous: Psi + sum_j Phi_j - 1
  double partition_residual_homogeneous() const;  // over nonzero modes

 private:
  DyadicFamily() = default;
  GridPtr grid_;
  int j_max_ = 0, j_low_ = 0, j_cover_ = 0;
  std::vector<std::vector<double>> blocks_;
  std::vector<double> low_;
};

// Inhomogeneous: j = -1 is the Psi piece, j <= -2 gives the zero field.
// Homogeneous: annuli below the lattice give the zero field.  Blocks above
// j_cover are an error either way.
SpectralField dyadic_block(const SpectralField& f, const DyadicFamily& fam, int j,
                           bool homogeneous = false);

// S_j = sum of blocks -1 .. j-1; Fourier support in the ball of radius 2^j
SpectralField partial_sum(const SpectralField& f, const DyadicFamily& fam, int j);

// l^q over j of 2^{js} ||block_j f||_{L^p}
double besov_norm(const SpectralField& f, const DyadicFamily& fam, double s,
                  double p, double q, bool homogeneous = false);

// first-difference characterization, s in (0,1): grid shifts with min-image
// distance, quadrature grouped over dyadic shells in |t|.  Includes the L^p
// term, matching the inhomogeneous norm up to equivalence constants.
double besov_norm_difference(const SpectralField& f, double s, double p, double q);

// sharp spectral indicator of the annulus 2^{j-1} <= |k| < 2^{j+1}
SpectralField project_annulus(const SpectralField& f, int j);

struct BernsteinReport {
  double low_ratio;    // ||Lambda^a f||_q / (2^{aj} ||f||_q)
  double high_ratio;   // ||Lambda^a f||_q / (2^{aj + 2j(1/p-1/q)} ||f||_p)
  double bracket_lo;   // analytic L2 bracket 2^{-a}
  double bracket_hi;   // analytic L2 bracket 2^{+a}
  bool low_in_bracket; // meaningful for p = q = 2 where the bracket is exact
};

// f is projected onto annulus j before measuring; requires a nonzero
// projection and a fully resolved annulus (j <= fam.j_max)
BernsteinReport bernstein_check(const SpectralField& f, const DyadicFamily& fam,
                                int j, double alpha, double p, double q);

// || block_k ( R(u . grad f) - u . grad (R f) ) ||_{L^p} with R = Lambda^{-alpha} d1.
// u must be divergence-free; alpha in (1/2, 1); products are dealiased.
double commutator_block_norm(const FlowVelocity& u, const SpectralField& f,
                             double alpha, int k, const DyadicFamily& fam, double p);

struct ScanRow {
  int k;
  double block_norm;
  double theory_bound;  // anchored at the first usable k, slope from theory
  double ratio;         // block_norm / theory_bound
};

struct CommutatorScan {
  std::vector<ScanRow> rows_g, rows_t;
  double slope_g = 0, slope_t = 0;      // least-squares slope of log2 norm vs k
  double theory_g = 0, theory_t = 0;    // 1-alpha and 2-2alpha
  double tol = 0;
  bool pass_g = false, pass_t = false;
};

// Variant G commutes against theta with the velocity induced by G; variant T
// commutes against psi with the velocity induced by R_alpha theta.
CommutatorScan commutator_rate_scan(const FlowVelocity& u_g, const FlowVelocity& u_t,
                                    const SpectralField& theta, const SpectralField& psi,
                                    double alpha, int k_min, int k_max,
                                    const DyadicFamily& fam, double p = 2.0,
                                    double tol = 0.15);

}  // namespace fracbou::lp
