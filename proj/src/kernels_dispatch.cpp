#include "fracbou/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace fracbou::kernels {

namespace {

using detail::VTable;

const VTable* table_for(Backend b) {
  if (b == Backend::avx2) return detail::avx2_vtable();
  return &detail::scalar_vtable();
}

Backend g_active = []() {
  return detail::avx2_vtable() ? Backend::avx2 : Backend::scalar;
}();

const VTable* g_table = table_for(g_active);

}  // namespace

Backend detected_backend() {
  return detail::avx2_vtable() ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() { return g_active; }

void set_backend(Backend b) {
  const VTable* t = table_for(b);
  if (!t) throw std::runtime_error("kernel backend not supported on this CPU: " +
                                   std::string(backend_name(b)));
  g_active = b;
  g_table = t;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

void init_from_env() {
  const char* e = std::getenv("FRACBOU_SIMD");
  if (!e || !*e || std::strcmp(e, "auto") == 0) {
    set_backend(detected_backend());
    return;
  }
  if (std::strcmp(e, "scalar") == 0) {
    set_backend(Backend::scalar);
  } else if (std::strcmp(e, "avx2") == 0) {
    set_backend(Backend::avx2);
  } else {
    throw std::runtime_error("FRACBOU_SIMD must be auto, scalar, or avx2");
  }
}

void mul(double* out, const double* a, const double* b, std::size_t m) {
  g_table->mul(out, a, b, m);
}
void mul_add_pair(double* out, const double* a1, const double* b1,
                  const double* a2, const double* b2, std::size_t m) {
  g_table->mul_add_pair(out, a1, b1, a2, b2, m);
}
void axpy(double* y, double a, const double* x, std::size_t m) {
  g_table->axpy(y, a, x, m);
}
void scale(double* y, double a, std::size_t m) { g_table->scale(y, a, m); }
double sum_abs_pow(const double* f, double p, std::size_t m) {
  return g_table->sum_abs_pow(f, p, m);
}
double max_abs(const double* f, std::size_t m) { return g_table->max_abs(f, m); }
void cmul_rtable(double* c, const double* t, std::size_t mc) {
  g_table->cmul_rtable(c, t, mc);
}
void cmul_rtable_to(double* out, const double* c, const double* t, std::size_t mc) {
  g_table->cmul_rtable_to(out, c, t, mc);
}
void cmul_deriv(double* out, const double* c, const double* k, std::size_t mc) {
  g_table->cmul_deriv(out, c, k, mc);
}
void cmul_ctable(double* c, const double* t, std::size_t mc) {
  g_table->cmul_ctable(c, t, mc);
}
double sum_sq_weighted(const double* c, const double* w, std::size_t mc) {
  return g_table->sum_sq_weighted(c, w, mc);
}
void table_fma(double* out, const double* t, const double* y, double s,
               const double* k, std::size_t mc) {
  g_table->table_fma(out, t, y, s, k, mc);
}

}  // namespace fracbou::kernels
