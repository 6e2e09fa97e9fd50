#include "kernels_impl.hpp"

#include <cmath>
#include <cstddef>

// Reference kernels. The loop structure mirrors the AVX2 variants: the main
// loop works in blocks of 4 with one accumulator per lane, the tail is folded
// into lane 0 after the block loop, reductions finish via hsum4.  That keeps
// scalar and vector results bit-identical.

namespace fracbou::kernels::detail {
namespace {

void s_mul(double* out, const double* a, const double* b, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) out[i] = a[i] * b[i];
}

void s_mul_add_pair(double* out, const double* a1, const double* b1,
                    const double* a2, const double* b2, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) out[i] = a1[i] * b1[i] + a2[i] * b2[i];
}

void s_axpy(double* y, double a, const double* x, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) y[i] = y[i] + a * x[i];
}

void s_scale(double* y, double a, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) y[i] *= a;
}

inline double pow_even2(double x) { return x * x; }
inline double pow_even4(double x) { double x2 = x * x; return x2 * x2; }
inline double pow_even6(double x) { double x2 = x * x; return (x2 * x2) * x2; }
inline double abs1(double x) { return std::fabs(x); }

template <double F(double)>
double block_sum(const double* f, std::size_t m) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    acc[0] += F(f[i + 0]);
    acc[1] += F(f[i + 1]);
    acc[2] += F(f[i + 2]);
    acc[3] += F(f[i + 3]);
  }
  double tail = 0.0;
  for (; i < m; ++i) tail += F(f[i]);
  return hsum4(acc) + tail;
}

double s_sum_abs_pow(const double* f, double p, std::size_t m) {
  if (p == 2.0) return block_sum<pow_even2>(f, m);
  if (p == 4.0) return block_sum<pow_even4>(f, m);
  if (p == 6.0) return block_sum<pow_even6>(f, m);
  if (p == 1.0) return block_sum<abs1>(f, m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += std::pow(std::fabs(f[i]), p);
  return acc;
}

double s_max_abs(const double* f, std::size_t m) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    for (int l = 0; l < 4; ++l) {
      double v = std::fabs(f[i + l]);
      if (v > acc[l]) acc[l] = v;
    }
  }
  double mx = acc[0];
  for (int l = 1; l < 4; ++l)
    if (acc[l] > mx) mx = acc[l];
  for (; i < m; ++i) {
    double v = std::fabs(f[i]);
    if (v > mx) mx = v;
  }
  return mx;
}

void s_cmul_rtable(double* c, const double* t, std::size_t mc) {
  for (std::size_t j = 0; j < mc; ++j) {
    c[2 * j + 0] *= t[j];
    c[2 * j + 1] *= t[j];
  }
}

void s_cmul_rtable_to(double* out, const double* c, const double* t, std::size_t mc) {
  for (std::size_t j = 0; j < mc; ++j) {
    out[2 * j + 0] = c[2 * j + 0] * t[j];
    out[2 * j + 1] = c[2 * j + 1] * t[j];
  }
}

void s_cmul_deriv(double* out, const double* c, const double* k, std::size_t mc) {
  for (std::size_t j = 0; j < mc; ++j) {
    double re = c[2 * j + 0];
    double im = c[2 * j + 1];
    out[2 * j + 0] = -k[j] * im;
    out[2 * j + 1] = k[j] * re;
  }
}

void s_cmul_ctable(double* c, const double* t, std::size_t mc) {
  for (std::size_t j = 0; j < mc; ++j) {
    double re = c[2 * j + 0], im = c[2 * j + 1];
    double tr = t[2 * j + 0], ti = t[2 * j + 1];
    c[2 * j + 0] = re * tr - im * ti;
    c[2 * j + 1] = re * ti + im * tr;
  }
}

double s_sum_sq_weighted(const double* c, const double* w, std::size_t mc) {
  // lane layout matches the AVX2 kernel: complex j contributes its re part to
  // lane 2*(j%2) and its im part to lane 2*(j%2)+1
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    acc[0] += w[j] * (c[2 * j + 0] * c[2 * j + 0]);
    acc[1] += w[j] * (c[2 * j + 1] * c[2 * j + 1]);
    acc[2] += w[j + 1] * (c[2 * j + 2] * c[2 * j + 2]);
    acc[3] += w[j + 1] * (c[2 * j + 3] * c[2 * j + 3]);
  }
  double tail = 0.0;
  for (; j < mc; ++j)
    tail += w[j] * (c[2 * j] * c[2 * j]) + w[j] * (c[2 * j + 1] * c[2 * j + 1]);
  return hsum4(acc) + tail;
}

void s_table_fma(double* out, const double* t, const double* y, double s,
                 const double* k, std::size_t mc) {
  for (std::size_t j = 0; j < mc; ++j) {
    out[2 * j + 0] = t[j] * (y[2 * j + 0] + s * k[2 * j + 0]);
    out[2 * j + 1] = t[j] * (y[2 * j + 1] + s * k[2 * j + 1]);
  }
}

}  // namespace

const VTable& scalar_vtable() {
  static const VTable v = {
      s_mul,        s_mul_add_pair, s_axpy,       s_scale,
      s_sum_abs_pow, s_max_abs,     s_cmul_rtable, s_cmul_rtable_to,
      s_cmul_deriv, s_cmul_ctable,  s_sum_sq_weighted, s_table_fma,
  };
  return v;
}

}  // namespace fracbou::kernels::detail
