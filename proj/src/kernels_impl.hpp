#pragma once
#include <cstddef>

// Internal backend table. Each entry mirrors one public kernel.
namespace fracbou::kernels::detail {

struct VTable {
  void (*mul)(double*, const double*, const double*, std::size_t);
  void (*mul_add_pair)(double*, const double*, const double*, const double*,
                       const double*, std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  double (*sum_abs_pow)(const double*, double, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*cmul_rtable)(double*, const double*, std::size_t);
  void (*cmul_rtable_to)(double*, const double*, const double*, std::size_t);
  void (*cmul_deriv)(double*, const double*, const double*, std::size_t);
  void (*cmul_ctable)(double*, const double*, std::size_t);
  double (*sum_sq_weighted)(const double*, const double*, std::size_t);
  void (*table_fma)(double*, const double*, const double*, double,
                    const double*, std::size_t);
};

const VTable& scalar_vtable();
const VTable* avx2_vtable();  // nullptr when not compiled in or unsupported

// Canonical horizontal reduction of 4 lane accumulators; both backends use
// exactly this association so sums agree bitwise.
inline double hsum4(const double acc[4]) {
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace fracbou::kernels::detail
