#pragma once

#include <cmath>

namespace lsbm {

/// Standard Gaussian cdf.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

/// Standard Gaussian quantile (inverse cdf), p in (0, 1).
/// Wichura's algorithm AS241 (PPND16), accurate to ~1e-16 relative.
double normal_quantile(double p);

/// log(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) {
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace lsbm
