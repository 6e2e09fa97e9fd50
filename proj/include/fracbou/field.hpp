#pragma once
#include <complex>
#include <cstddef>
#include <vector>

#include "fracbou/grid.hpp"

// A scalar field on a SpectralGrid holding physical values, Fourier
// coefficients, or both.  Either representation is realized lazily on access;
// mutation through *_mut() invalidates the other one.  Lazy realization is
// cached in mutable storage, so sharing one field across threads requires
// realizing the representation first; distinct fields are always safe.

namespace fracbou {

namespace detail {
// fftw_malloc-backed buffer so FFTW's new-array execute sees the alignment
// it was planned with
class AlignedBuffer {
 public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t count);
  AlignedBuffer(const AlignedBuffer& o);
  AlignedBuffer(AlignedBuffer&& o) noexcept;
  AlignedBuffer& operator=(const AlignedBuffer& o);
  AlignedBuffer& operator=(AlignedBuffer&& o) noexcept;
  ~AlignedBuffer();
  double* data() { return p_; }
  const double* data() const { return p_; }
  std::size_t size() const { return count_; }
  void fill_zero();

 private:
  double* p_ = nullptr;
  std::size_t count_ = 0;
};
}  // namespace detail

class SpectralField {
 public:
  explicit SpectralField(GridPtr grid);  // zero field, both representations valid
  static SpectralField from_physical(GridPtr grid, const std::vector<double>& values);
  static SpectralField from_spectral(GridPtr grid,
                                     const std::vector<std::complex<double>>& coeffs);

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  bool has_physical() const { return pvalid_; }
  bool has_spectral() const { return svalid_; }

  const double* phys() const;   // realizes physical if needed
  const double* spec() const;   // realizes spectral if needed; interleaved re,im
  double* phys_mut();           // realizes physical, drops spectral
  double* spec_mut();           // realizes spectral, drops physical

  void ensure_physical() const { (void)phys(); }
  void ensure_spectral() const { (void)spec(); }

  double value(int i1, int i2) const;                 // physical sample
  std::complex<double> coeff(int row, int col) const; // stored mode
  double mean() const;

 private:
  GridPtr grid_;
  mutable detail::AlignedBuffer pbuf_, sbuf_;
  mutable bool pvalid_ = false, svalid_ = false;
};

// max deviation of stored self-conjugate modes from Hermitian symmetry; the
// interior columns are symmetric by construction of the half-spectrum layout
double hermitian_residual(const SpectralField& f);

// enforce the symmetry on the self-conjugate columns of hand-built spectra
void hermitian_symmetrize(SpectralField& f);

}  // namespace fracbou
