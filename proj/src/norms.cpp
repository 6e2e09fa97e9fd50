#include "fracbou/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracbou/kernels.hpp"

namespace fracbou {

double lebesgue_norm(const SpectralField& f, double p) {
  if (std::isinf(p)) return kernels::max_abs(f.phys(), f.grid().phys_size());
  if (!(p >= 1.0)) throw std::domain_error("lebesgue_norm requires p >= 1");
  const double s = kernels::sum_abs_pow(f.phys(), p, f.grid().phys_size());
  return std::pow(f.grid().cell_area() * s, 1.0 / p);
}

double l2_via_parseval(const SpectralField& f) {
  const SpectralGrid& g = f.grid();
  const double s = kernels::sum_sq_weighted(f.spec(), g.hermitian_weight().data(),
                                            g.spec_size());
  const double n2 = double(g.phys_size());
  return std::sqrt(g.cell_area() * s / n2);
}

double lambda_sq_norm(const SpectralField& f, double s) {
  const SpectralGrid& g = f.grid();
  const std::size_t ms = g.spec_size();
  const auto& w = g.hermitian_weight();
  const auto& ka = g.kabs();
  std::vector<double> wt(ms);
  for (std::size_t m = 0; m < ms; ++m) wt[m] = w[m] * std::pow(ka[m], s);
  wt[0] = (s == 0.0) ? 1.0 : 0.0;
  const double sum = kernels::sum_sq_weighted(f.spec(), wt.data(), ms);
  return g.cell_area() * sum / double(g.phys_size());
}

}  // namespace fracbou
