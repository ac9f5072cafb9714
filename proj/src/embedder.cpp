#include "lsbm/embedder.hpp"

#include "lsbm/rng.hpp"

#include <stdexcept>

namespace lsbm {

namespace {
constexpr std::uint64_t kEmbedStreamTag = 0x1b5bu;
}

std::pair<GrayImage, EmbedReport> embed_lsb_matching(const GrayImage& cover,
                                                     const EmbedConfig& config) {
    cover.validate();
    config.validate();

    GrayImage stego = cover;
    EmbedReport report;
    const CounterRng rng(config.seed, kEmbedStreamTag);
    const int max_value = cover.max_value();
    const Eigen::Index n = cover.size();

    for (Eigen::Index i = 0; i < n; ++i) {
        const std::uint64_t h = rng.word(static_cast<std::uint64_t>(i));
        const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
        if (u >= config.rate) continue;  // pixel does not carry a bit

        ++report.pixels_carrying;
        const int m = static_cast<int>(h & 1u);
        const int c = stego.pixels[i];
        if ((c & 1) == m) continue;  // LSB already matches, no change needed

        int direction = (h >> 1) & 1u ? 1 : -1;
        if (c == 0) direction = 1;
        if (c == max_value) direction = -1;
        stego.pixels[i] = c + direction;
        ++report.pixels_changed;
        report.change_positions.push_back(static_cast<std::int64_t>(i));
    }
    return {std::move(stego), std::move(report)};
}

int message_bit(const EmbedConfig& config, std::int64_t index) {
    const CounterRng rng(config.seed, kEmbedStreamTag);
    return static_cast<int>(rng.word(static_cast<std::uint64_t>(index)) & 1u);
}

QuantizedPmf empirical_pmf(const std::vector<GrayImage>& images) {
    if (images.empty()) throw std::invalid_argument("empirical_pmf: no images");
    const int bit_depth = images.front().bit_depth;
    const Eigen::Index levels = Eigen::Index{1} << bit_depth;

    Eigen::ArrayX<std::int64_t> counts = Eigen::ArrayX<std::int64_t>::Zero(levels);
    std::int64_t total = 0;
    for (const GrayImage& img : images) {
        img.validate();
        if (img.bit_depth != bit_depth)
            throw std::invalid_argument("empirical_pmf: mixed bit depths");
        for (Eigen::Index i = 0; i < img.size(); ++i) ++counts[img.pixels[i]];
        total += img.size();
    }

    QuantizedPmf pmf;
    pmf.bit_depth = bit_depth;
    pmf.mass = counts.cast<double>() / static_cast<double>(total);
    return pmf;
}

}  // namespace lsbm
