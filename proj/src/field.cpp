#include "fracbou/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace fracbou {
namespace detail {

AlignedBuffer::AlignedBuffer(std::size_t count) : count_(count) {
  if (count_) {
    p_ = fftw_alloc_real(count_);
    if (!p_) throw std::bad_alloc();
  }
}
AlignedBuffer::AlignedBuffer(const AlignedBuffer& o) : AlignedBuffer(o.count_) {
  if (count_) std::memcpy(p_, o.p_, count_ * sizeof(double));
}
AlignedBuffer::AlignedBuffer(AlignedBuffer&& o) noexcept : p_(o.p_), count_(o.count_) {
  o.p_ = nullptr;
  o.count_ = 0;
}
AlignedBuffer& AlignedBuffer::operator=(const AlignedBuffer& o) {
  if (this != &o) {
    AlignedBuffer tmp(o);
    std::swap(p_, tmp.p_);
    std::swap(count_, tmp.count_);
  }
  return *this;
}
AlignedBuffer& AlignedBuffer::operator=(AlignedBuffer&& o) noexcept {
  if (this != &o) {
    if (p_) fftw_free(p_);
    p_ = o.p_;
    count_ = o.count_;
    o.p_ = nullptr;
    o.count_ = 0;
  }
  return *this;
}
AlignedBuffer::~AlignedBuffer() {
  if (p_) fftw_free(p_);
}
void AlignedBuffer::fill_zero() {
  if (count_) std::memset(p_, 0, count_ * sizeof(double));
}

}  // namespace detail

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)),
      pbuf_(grid_->phys_size()),
      sbuf_(2 * grid_->spec_size()) {
  pbuf_.fill_zero();
  sbuf_.fill_zero();
  pvalid_ = svalid_ = true;
}

SpectralField SpectralField::from_physical(GridPtr grid, const std::vector<double>& values) {
  if (values.size() != grid->phys_size())
    throw std::invalid_argument("physical data size does not match grid");
  SpectralField f(std::move(grid));
  std::memcpy(f.pbuf_.data(), values.data(), values.size() * sizeof(double));
  f.pvalid_ = true;
  f.svalid_ = false;
  return f;
}

SpectralField SpectralField::from_spectral(GridPtr grid,
                                           const std::vector<std::complex<double>>& coeffs) {
  if (coeffs.size() != grid->spec_size())
    throw std::invalid_argument("spectral data size does not match grid");
  SpectralField f(std::move(grid));
  std::memcpy(f.sbuf_.data(), coeffs.data(), coeffs.size() * 2 * sizeof(double));
  f.svalid_ = true;
  f.pvalid_ = false;
  return f;
}

const double* SpectralField::phys() const {
  if (!pvalid_) {
    grid_->inverse(sbuf_.data(), pbuf_.data());
    pvalid_ = true;
  }
  return pbuf_.data();
}

const double* SpectralField::spec() const {
  if (!svalid_) {
    grid_->forward(pbuf_.data(), sbuf_.data());
    svalid_ = true;
  }
  return sbuf_.data();
}

double* SpectralField::phys_mut() {
  phys();
  svalid_ = false;
  return pbuf_.data();
}

double* SpectralField::spec_mut() {
  spec();
  pvalid_ = false;
  return sbuf_.data();
}

double SpectralField::value(int i1, int i2) const {
  return phys()[std::size_t(i1) * grid_->n() + i2];
}

std::complex<double> SpectralField::coeff(int row, int col) const {
  const double* s = spec();
  std::size_t m = grid_->mode(row, col);
  return {s[2 * m], s[2 * m + 1]};
}

double SpectralField::mean() const {
  return coeff(0, 0).real() / double(grid_->phys_size());
}

double hermitian_residual(const SpectralField& f) {
  const SpectralGrid& g = f.grid();
  const int n = g.n();
  double worst = 0.0;
  for (int col : {0, n / 2}) {
    for (int row = 1; row < n / 2; ++row) {
      std::complex<double> a = f.coeff(row, col);
      std::complex<double> b = f.coeff(n - row, col);
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
    for (int row : {0, n / 2}) {
      worst = std::max(worst, std::abs(f.coeff(row, col).imag()));
    }
  }
  return worst;
}

void hermitian_symmetrize(SpectralField& f) {
  const SpectralGrid& g = f.grid();
  const int n = g.n();
  double* s = f.spec_mut();
  for (int col : {0, n / 2}) {
    for (int row = 1; row < n / 2; ++row) {
      std::size_t a = g.mode(row, col), b = g.mode(n - row, col);
      s[2 * b] = s[2 * a];
      s[2 * b + 1] = -s[2 * a + 1];
    }
    for (int row : {0, n / 2}) s[2 * g.mode(row, col) + 1] = 0.0;
  }
}

}  // namespace fracbou
