#pragma once
#include <cstddef>

// Hot inner loops shared by the spectral operators and the time stepper.
// Every kernel has a scalar reference implementation and, on x86 with AVX2,
// a vectorized variant.  The backend is picked once at startup (or forced via
// FRACBOU_SIMD / set_backend) and stays fixed, so a given build on a given
// machine is deterministic.
//
// Reductions use a canonical 4-lane accumulation in both backends, so scalar
// and AVX2 results are bit-identical, not merely close.  Elementwise kernels
// are bit-identical as well; the build disables FP contraction to keep it so.

namespace fracbou::kernels {

enum class Backend { scalar, avx2 };

Backend detected_backend();            // best backend this CPU supports
Backend active_backend();
void set_backend(Backend b);           // throws std::runtime_error if unsupported here
const char* backend_name(Backend b);
void init_from_env();                  // honors FRACBOU_SIMD={auto,scalar,avx2}

// Real arrays of length m.
void mul(double* out, const double* a, const double* b, std::size_t m);
// out = a1.*b1 + a2.*b2 (the advection dot product u . grad f)
void mul_add_pair(double* out, const double* a1, const double* b1,
                  const double* a2, const double* b2, std::size_t m);
void axpy(double* y, double a, const double* x, std::size_t m);
void scale(double* y, double a, std::size_t m);
// sum of |f_i|^p; fast paths for p in {1,2,4,6}, p=inf handled by max_abs
double sum_abs_pow(const double* f, double p, std::size_t m);
double max_abs(const double* f, std::size_t m);

// Complex arrays: interleaved re,im with mc complex entries.  Real tables
// have one entry per complex element.
void cmul_rtable(double* c, const double* t, std::size_t mc);
void cmul_rtable_to(double* out, const double* c, const double* t, std::size_t mc);
// out[j] = (i * k[j]) * c[j], the spectral derivative against a real wavenumber table
void cmul_deriv(double* out, const double* c, const double* k, std::size_t mc);
// general complex symbol, t interleaved like c
void cmul_ctable(double* c, const double* t, std::size_t mc);
// sum over j of w[j] * |c[j]|^2 (Parseval-type sums; w carries any symmetry factors)
double sum_sq_weighted(const double* c, const double* w, std::size_t mc);
// out[j] = t[j] * (y[j] + s*k[j]) complexwise; the integrating-factor stage update
void table_fma(double* out, const double* t, const double* y, double s,
               const double* k, std::size_t mc);

}  // namespace fracbou::kernels
