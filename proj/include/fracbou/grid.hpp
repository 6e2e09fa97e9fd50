#pragma once
#include <fftw3.h>

#include <cstddef>
#include <memory>
#include <vector>

// Uniform n x n grid on the periodic square [0, length)^2 plus the FFTW plans
// and wavenumber tables every operator shares.
//
// Conventions (also echoed in snapshot headers):
//   physical: values[i1*n + i2], x = (i1*h, i2*h), h = length/n
//   spectral: half-spectrum r2c layout, coeffs[i1*(n/2+1) + j2] interleaved
//             re,im; axis 1 (x1) keeps the full signed range k1 in
//             {-n/2, ..., n/2-1} (row i1 <= n/2 maps to i1, else i1-n);
//             axis 2 stores k2 in {0, ..., n/2}, the negative half being the
//             Hermitian mirror.  Scaled wavenumbers are index * 2*pi/length.
//   forward transform is unnormalized; the inverse carries the 1/n^2.

namespace fracbou {

inline constexpr double two_pi = 6.283185307179586476925286766559;

class SpectralGrid : public std::enable_shared_from_this<SpectralGrid> {
 public:
  static std::shared_ptr<const SpectralGrid> create(int n, double length = two_pi);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_area() const { return spacing() * spacing(); }
  double kscale() const { return two_pi / length_; }

  std::size_t phys_size() const { return std::size_t(n_) * n_; }
  std::size_t spec_size() const { return std::size_t(n_) * nh_; }
  int nh() const { return nh_; }  // stored modes along axis 2: n/2 + 1

  int k1_index(int row) const { return row <= n_ / 2 ? row : row - n_; }
  std::size_t mode(int row, int col) const { return std::size_t(row) * nh_ + col; }

  // scaled wavenumbers per stored mode, length spec_size()
  const std::vector<double>& kx1() const { return kx1_; }
  const std::vector<double>& kx2() const { return kx2_; }
  const std::vector<double>& kabs() const { return kabs_; }
  const std::vector<double>& kabs2() const { return kabs2_; }
  // 1 for self-conjugate columns (k2 = 0 or Nyquist), else 2
  const std::vector<double>& hermitian_weight() const { return herm_w_; }
  // 2/3-rule mask in index space: 0 where max(|k1|,|k2|) > n/3
  const std::vector<double>& dealias_mask() const { return dealias_; }

  double kmax() const { return kmax_; }        // scaled, corner of the lattice
  double kmin_nonzero() const { return kscale(); }
  double nyquist() const { return kscale() * (n_ / 2); }

  // unnormalized r2c; phys and spec must not alias
  void forward(const double* phys, double* spec) const;
  // c2r with the 1/n^2 normalization applied; preserves spec
  void inverse(const double* spec, double* phys) const;
  // same transform run directly on spec, which c2r clobbers; for hot loops
  // that are done with the coefficients anyway
  void inverse_destructive(double* spec, double* phys) const;

 private:
  SpectralGrid(int n, double length);

  int n_;
  int nh_;
  double length_;
  double kmax_;
  std::vector<double> kx1_, kx2_, kabs_, kabs2_, herm_w_, dealias_;
  fftw_plan plan_r2c_;
  fftw_plan plan_c2r_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

}  // namespace fracbou
