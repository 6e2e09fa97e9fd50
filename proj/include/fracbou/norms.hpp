#pragma once
#include "fracbou/field.hpp"

// Norms over the periodic square. Lebesgue norms use the trapezoid-exact grid
// quadrature (cell_area * sum); the spectral-side helpers use Parseval sums
// over the stored half-spectrum with the Hermitian weights.

namespace fracbou {

// p in [1, inf]; pass std::numeric_limits<double>::infinity() for the sup norm
double lebesgue_norm(const SpectralField& f, double p);

double l2_via_parseval(const SpectralField& f);

// squared L2 norm of Lambda^{s/2} f via the spectrum; the k = 0 mode counts
// only at s = 0
double lambda_sq_norm(const SpectralField& f, double s);

}  // namespace fracbou
