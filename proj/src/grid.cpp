#include "fracbou/grid.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fracbou/kernels.hpp"

namespace fracbou {

SpectralGrid::SpectralGrid(int n, double length) : n_(n), nh_(n / 2 + 1), length_(length) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and at least 8");
  if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");

  const double ks = kscale();
  kx1_.resize(spec_size());
  kx2_.resize(spec_size());
  kabs_.resize(spec_size());
  kabs2_.resize(spec_size());
  herm_w_.resize(spec_size());
  dealias_.resize(spec_size());
  const int cut = n_ / 3;  // keep max(|k1|,|k2|) <= n/3
  for (int row = 0; row < n_; ++row) {
    const int i1 = k1_index(row);
    for (int col = 0; col < nh_; ++col) {
      const std::size_t m = mode(row, col);
      const double k1 = ks * i1;
      const double k2 = ks * col;
      kx1_[m] = k1;
      kx2_[m] = k2;
      kabs2_[m] = k1 * k1 + k2 * k2;
      kabs_[m] = std::sqrt(kabs2_[m]);
      herm_w_[m] = (col == 0 || col == n_ / 2) ? 1.0 : 2.0;
      dealias_[m] = (std::abs(i1) > cut || col > cut) ? 0.0 : 1.0;
    }
  }
  kmax_ = ks * std::sqrt(2.0) * (n_ / 2);

  double* rbuf = fftw_alloc_real(phys_size());
  fftw_complex* cbuf = fftw_alloc_complex(spec_size());
  plan_r2c_ = fftw_plan_dft_r2c_2d(n_, n_, rbuf, cbuf, FFTW_ESTIMATE);
  plan_c2r_ = fftw_plan_dft_c2r_2d(n_, n_, cbuf, rbuf, FFTW_ESTIMATE);
  fftw_free(rbuf);
  fftw_free(cbuf);
  if (!plan_r2c_ || !plan_c2r_) throw std::runtime_error("fftw planning failed");
}

SpectralGrid::~SpectralGrid() {
  fftw_destroy_plan(plan_r2c_);
  fftw_destroy_plan(plan_c2r_);
}

std::shared_ptr<const SpectralGrid> SpectralGrid::create(int n, double length) {
  return std::shared_ptr<const SpectralGrid>(new SpectralGrid(n, length));
}

void SpectralGrid::forward(const double* phys, double* spec) const {
  // out-of-place r2c preserves its input; buffers are fftw-aligned by
  // construction (AlignedBuffer), which new-array execute requires
  fftw_execute_dft_r2c(plan_r2c_, const_cast<double*>(phys),
                       reinterpret_cast<fftw_complex*>(spec));
}

void SpectralGrid::inverse(const double* spec, double* phys) const {
  // c2r clobbers its input, so run it on a scratch copy
  fftw_complex* in = fftw_alloc_complex(spec_size());
  std::memcpy(in, spec, spec_size() * 2 * sizeof(double));
  fftw_execute_dft_c2r(plan_c2r_, in, phys);
  fftw_free(in);
  kernels::scale(phys, 1.0 / double(phys_size()), phys_size());
}

void SpectralGrid::inverse_destructive(double* spec, double* phys) const {
  fftw_execute_dft_c2r(plan_c2r_, reinterpret_cast<fftw_complex*>(spec), phys);
  kernels::scale(phys, 1.0 / double(phys_size()), phys_size());
}

}  // namespace fracbou
