#include "kernels_impl.hpp"

// AVX2 variants. Compiled with -mavx2 on x86_64 only; on other targets this
// TU contributes a null table and the dispatcher stays on the scalar path.
// No FMA instructions here: results must match the scalar kernels bit for bit.

#if defined(__AVX2__) && defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

namespace fracbou::kernels::detail {
namespace {

inline __m256d dup_pairs(const double* t, std::size_t j) {
  // [t0,t1] -> [t0,t0,t1,t1]
  __m256d b = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(t + j));
  return _mm256_permute_pd(b, 0b1100);
}

inline __m256d abs_pd(__m256d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(x, mask);
}

void v_mul(double* out, const double* a, const double* b, std::size_t m) {
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < m; ++i) out[i] = a[i] * b[i];
}

void v_mul_add_pair(double* out, const double* a1, const double* b1,
                    const double* a2, const double* b2, std::size_t m) {
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(a1 + i), _mm256_loadu_pd(b1 + i));
    __m256d t2 = _mm256_mul_pd(_mm256_loadu_pd(a2 + i), _mm256_loadu_pd(b2 + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(t1, t2));
  }
  for (; i < m; ++i) out[i] = a1[i] * b1[i] + a2[i] * b2[i];
}

void v_axpy(double* y, double a, const double* x, std::size_t m) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d t = _mm256_add_pd(_mm256_loadu_pd(y + i),
                              _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < m; ++i) y[i] = y[i] + a * x[i];
}

void v_scale(double* y, double a, std::size_t m) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
  for (; i < m; ++i) y[i] *= a;
}

inline double hsum_vec(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return hsum4(lane);
}

double v_sum_abs_pow(const double* f, double p, std::size_t m) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  double tail = 0.0;
  if (p == 2.0) {
    for (; i + 4 <= m; i += 4) {
      __m256d x = _mm256_loadu_pd(f + i);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    for (; i < m; ++i) tail += f[i] * f[i];
  } else if (p == 4.0) {
    for (; i + 4 <= m; i += 4) {
      __m256d x = _mm256_loadu_pd(f + i);
      __m256d x2 = _mm256_mul_pd(x, x);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(x2, x2));
    }
    for (; i < m; ++i) {
      double x2 = f[i] * f[i];
      tail += x2 * x2;
    }
  } else if (p == 6.0) {
    for (; i + 4 <= m; i += 4) {
      __m256d x = _mm256_loadu_pd(f + i);
      __m256d x2 = _mm256_mul_pd(x, x);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(x2, x2), x2));
    }
    for (; i < m; ++i) {
      double x2 = f[i] * f[i];
      tail += (x2 * x2) * x2;
    }
  } else if (p == 1.0) {
    for (; i + 4 <= m; i += 4)
      acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(f + i)));
    for (; i < m; ++i) tail += std::fabs(f[i]);
  } else {
    double a = 0.0;
    for (std::size_t t = 0; t < m; ++t) a += std::pow(std::fabs(f[t]), p);
    return a;
  }
  return hsum_vec(acc) + tail;
}

double v_max_abs(const double* f, std::size_t m) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(f + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double mx = lane[0];
  for (int l = 1; l < 4; ++l)
    if (lane[l] > mx) mx = lane[l];
  for (; i < m; ++i) {
    double v = std::fabs(f[i]);
    if (v > mx) mx = v;
  }
  return mx;
}

void v_cmul_rtable(double* c, const double* t, std::size_t mc) {
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d tq = dup_pairs(t, j);
    __m256d v = _mm256_loadu_pd(c + 2 * j);
    _mm256_storeu_pd(c + 2 * j, _mm256_mul_pd(v, tq));
  }
  for (; j < mc; ++j) {
    c[2 * j + 0] *= t[j];
    c[2 * j + 1] *= t[j];
  }
}

void v_cmul_rtable_to(double* out, const double* c, const double* t, std::size_t mc) {
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d tq = dup_pairs(t, j);
    __m256d v = _mm256_loadu_pd(c + 2 * j);
    _mm256_storeu_pd(out + 2 * j, _mm256_mul_pd(v, tq));
  }
  for (; j < mc; ++j) {
    out[2 * j + 0] = c[2 * j + 0] * t[j];
    out[2 * j + 1] = c[2 * j + 1] * t[j];
  }
}

void v_cmul_deriv(double* out, const double* c, const double* k, std::size_t mc) {
  const long long sbit = static_cast<long long>(0x8000000000000000ULL);
  const __m256d signs = _mm256_castsi256_pd(_mm256_set_epi64x(0, sbit, 0, sbit));
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d kq = _mm256_xor_pd(dup_pairs(k, j), signs);  // [-k0, k0, -k1, k1]
    __m256d v = _mm256_loadu_pd(c + 2 * j);
    __m256d sw = _mm256_permute_pd(v, 0b0101);           // [im0, re0, im1, re1]
    _mm256_storeu_pd(out + 2 * j, _mm256_mul_pd(kq, sw));
  }
  for (; j < mc; ++j) {
    double re = c[2 * j + 0], im = c[2 * j + 1];
    out[2 * j + 0] = -k[j] * im;
    out[2 * j + 1] = k[j] * re;
  }
}

void v_cmul_ctable(double* c, const double* t, std::size_t mc) {
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d v = _mm256_loadu_pd(c + 2 * j);
    __m256d tv = _mm256_loadu_pd(t + 2 * j);
    __m256d tre = _mm256_permute_pd(tv, 0b0000);  // [tr0,tr0,tr1,tr1]
    __m256d tim = _mm256_permute_pd(tv, 0b1111);  // [ti0,ti0,ti1,ti1]
    __m256d vsw = _mm256_permute_pd(v, 0b0101);   // [im,re,...]
    __m256d res = _mm256_addsub_pd(_mm256_mul_pd(v, tre), _mm256_mul_pd(vsw, tim));
    _mm256_storeu_pd(c + 2 * j, res);
  }
  for (; j < mc; ++j) {
    double re = c[2 * j + 0], im = c[2 * j + 1];
    double tr = t[2 * j + 0], ti = t[2 * j + 1];
    c[2 * j + 0] = re * tr - im * ti;
    c[2 * j + 1] = re * ti + im * tr;
  }
}

double v_sum_sq_weighted(const double* c, const double* w, std::size_t mc) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d wq = dup_pairs(w, j);
    __m256d v = _mm256_loadu_pd(c + 2 * j);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wq, _mm256_mul_pd(v, v)));
  }
  double tail = 0.0;
  for (; j < mc; ++j)
    tail += w[j] * (c[2 * j] * c[2 * j]) + w[j] * (c[2 * j + 1] * c[2 * j + 1]);
  return hsum_vec(acc) + tail;
}

void v_table_fma(double* out, const double* t, const double* y, double s,
                 const double* k, std::size_t mc) {
  __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 2 <= mc; j += 2) {
    __m256d tq = dup_pairs(t, j);
    __m256d vy = _mm256_loadu_pd(y + 2 * j);
    __m256d vk = _mm256_loadu_pd(k + 2 * j);
    __m256d staged = _mm256_add_pd(vy, _mm256_mul_pd(vs, vk));
    _mm256_storeu_pd(out + 2 * j, _mm256_mul_pd(tq, staged));
  }
  for (; j < mc; ++j) {
    out[2 * j + 0] = t[j] * (y[2 * j + 0] + s * k[2 * j + 0]);
    out[2 * j + 1] = t[j] * (y[2 * j + 1] + s * k[2 * j + 1]);
  }
}

const VTable avx2_table = {
    v_mul,        v_mul_add_pair, v_axpy,       v_scale,
    v_sum_abs_pow, v_max_abs,     v_cmul_rtable, v_cmul_rtable_to,
    v_cmul_deriv, v_cmul_ctable,  v_sum_sq_weighted, v_table_fma,
};

}  // namespace

const VTable* avx2_vtable() {
  if (__builtin_cpu_supports("avx2")) return &avx2_table;
  return nullptr;
}

}  // namespace fracbou::kernels::detail

#else

namespace fracbou::kernels::detail {
const VTable* avx2_vtable() { return nullptr; }
}  // namespace fracbou::kernels::detail

#endif
