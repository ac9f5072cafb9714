#pragma once

#include "lsbm/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace lsbm {

struct EmbedConfig {
    double rate = 0.0;       // hidden bits per pixel, R = L/N, in [0, 1]
    std::uint64_t seed = 0;  // master PRNG seed

    void validate() const {
        if (!(rate >= 0.0 && rate <= 1.0))
            throw std::invalid_argument("EmbedConfig: rate outside [0,1]");
    }
};

struct EmbedReport {
    std::int64_t pixels_carrying = 0;
    std::int64_t pixels_changed = 0;
    std::vector<std::int64_t> change_positions;  // flat indices of changed pixels
};

/// Per-pixel randomness drawn from a counter stream keyed by (seed, index):
/// the carry decision uses the top bits, the message bit and +-1 direction
/// the low bits, so the result is independent of evaluation order.
/// A carrying pixel whose LSB already equals the message bit is unchanged;
/// otherwise it moves by +-1 (forced +1 at 0, forced -1 at 2^B - 1).
std::pair<GrayImage, EmbedReport> embed_lsb_matching(const GrayImage& cover,
                                                     const EmbedConfig& config);

/// Regenerates the message bit stream of a given embedding configuration,
/// for ground-truth checks against EmbedReport.
int message_bit(const EmbedConfig& config, std::int64_t index);

/// Normalized histogram over the grayscale set of all pixels of all images.
QuantizedPmf empirical_pmf(const std::vector<GrayImage>& images);

}  // namespace lsbm
