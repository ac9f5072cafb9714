#pragma once

#include "lsbm/types.hpp"

#include <utility>

namespace lsbm {

/// Simplified per-pixel log-LR for the fully-modified case:
/// log(exp((z - theta)/sigma^2) + exp((theta - z)/sigma^2)), evaluated in
/// log-sum-exp form so it stays finite for arguments up to ~1e308.
double log_lr_pixel(int z, const PixelParams& params);

/// Exact per-pixel LR (p[z-1] + p[z+1]) / (2 p[z]) from quantized-Gaussian
/// pmfs, no approximation; the quality oracle for log_lr_pixel.
/// Requires interior z and p[z] > 0 numerically.
double exact_lr_pixel(int z, const PixelParams& params, int bit_depth = 8);

/// Mean expectation/variance of the per-pixel log-LR over a parameter
/// field, under the cover pmf (mu0, var0) and under the fully-modified
/// pmf Q^{R=2} (mu2, var2).  Per-pixel sums run over the window
/// [theta - 12 sigma - 2, theta + 12 sigma + 2] clipped to the range.
MomentSet moments_r2(const ParamField& field, int bit_depth = 8);

/// Moments of the log-LR at embedding rate R by total expectation/variance:
/// mu_R = (R/2) mu2 + (1 - R/2) mu0, and the matching mixture variance.
/// R in [0, 2]; R = 2 reproduces (mu2, var2) exactly.
std::pair<double, double> moments_general(const MomentSet& m, double rate);

/// Normalized log-LR statistic (sum_n lr(z_n) - N mu0) / sqrt(N var0).
double normalized_statistic(const GrayImage& image, const ParamField& field,
                            const MomentSet& moments);

/// Decision threshold warranting false-alarm probability alpha0
/// asymptotically: Phi^-1(1 - alpha0).
double threshold(double alpha0);

/// Asymptotic power of the normalized test against full +-1 modification.
double power_r2(double alpha0, const MomentSet& m, std::int64_t n);

/// Asymptotic power against embedding at rate R in (0, 2]:
/// 1 - Phi((sigma0/sigma_R) Phi^-1(1-alpha0) + sqrt(N)(mu0 - mu_R)/sigma_R)
/// with (mu_R, sigma_R^2) from moments_general.
double power_general(double alpha0, const MomentSet& m, std::int64_t n, double rate);

/// H1 iff statistic > threshold; inputs echoed in the outcome.
TestOutcome decide(double statistic, double threshold, double alpha0);

}  // namespace lsbm
