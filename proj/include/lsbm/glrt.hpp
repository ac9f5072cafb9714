#pragma once

#include "lsbm/types.hpp"

#include <cmath>
#include <limits>

namespace lsbm {

/// Local parameter estimates on the image grid; the 1-pixel border, where
/// the 3x3 kernel does not fit, is marked invalid and excluded from sums.
struct EstimatedField {
    int width = 0;
    int height = 0;
    ArrayXd theta_hat;  // flat row-major, like GrayImage
    ArrayXd sigma_hat;
    ArrayXb valid;
};

struct GlrtConfig {
    double alpha_stab = 0.25;  // stabilizer added to sigma-hat before squaring
    double threshold = 0.0;    // decision threshold, calibrated empirically
    double alpha0 = std::numeric_limits<double>::quiet_NaN();  // informational

    void validate() const {
        if (!(alpha_stab >= 0.0))
            throw std::invalid_argument("GlrtConfig: alpha_stab must be >= 0");
    }
};

/// Local expectation estimate: interior pixels filtered with the kernel
/// (1/4) [[-1, 2, -1], [2, 0, 2], [-1, 2, -1]].  Requires width, height >= 3.
ArrayXd estimate_expectation(const GrayImage& image);

/// Local variance estimate: population variance (divide by 4) of the four
/// 4-connected neighbors.  Requires width, height >= 3.
ArrayXd estimate_variance(const GrayImage& image);

/// Both estimates plus the interior validity mask.
EstimatedField estimate_field(const GrayImage& image);

/// Per-pixel estimated log-LR with moderated scale (alpha + sigma_hat)^2.
double estimated_log_lr(int z, double theta_hat, double sigma_hat, double alpha_stab);

/// Self-normalized decision statistic of the practical test:
/// (1/sqrt(N_valid)) sum over valid pixels of
///   [lr_hat(z_n) - log 2 - 1/(4 (alpha + sigma_hat_n)^2)].
/// Deliberately not variance-normalized.
double glrt_statistic(const GrayImage& image, const GlrtConfig& config);

/// H1 iff the statistic exceeds config.threshold.
TestOutcome detect(const GrayImage& image, const GlrtConfig& config);

}  // namespace lsbm
