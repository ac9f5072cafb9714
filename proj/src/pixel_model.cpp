#include "lsbm/pixel_model.hpp"

#include "lsbm/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace lsbm {

int quantize(double y, int bit_depth) {
    if (!std::isfinite(y)) throw std::invalid_argument("quantize: non-finite input");
    const double k = std::floor(y + 0.5);
    const double max_value = static_cast<double>((1 << bit_depth) - 1);
    if (k < 0.0) return 0;
    if (k > max_value) return (1 << bit_depth) - 1;
    return static_cast<int>(k);
}

QuantizedPmf cover_pmf(const PixelParams& params, int bit_depth) {
    params.validate();
    const int levels = 1 << bit_depth;
    const double max_value = levels - 1;
    if (params.theta < 0.0 || params.theta > max_value)
        throw std::invalid_argument("cover_pmf: theta outside dynamic range");

    QuantizedPmf pmf;
    pmf.bit_depth = bit_depth;
    pmf.mass.resize(levels);

    const double inv_sigma = 1.0 / params.sigma;
    // cdf at every half-integer cut; boundary bins absorb the tails.
    double lo_cdf = 0.0;
    for (int k = 0; k < levels; ++k) {
        const double hi_cdf =
            k == levels - 1 ? 1.0 : normal_cdf((k + 0.5 - params.theta) * inv_sigma);
        pmf.mass[k] = hi_cdf - lo_cdf;
        lo_cdf = hi_cdf;
    }
    return pmf;
}

QuantizedPmf stego_pmf(const QuantizedPmf& cover, double rate) {
    cover.validate();
    if (!(rate >= 0.0 && rate <= 2.0)) throw std::invalid_argument("stego_pmf: rate outside [0,2]");

    const Eigen::Index n = cover.mass.size();
    QuantizedPmf out;
    out.bit_depth = cover.bit_depth;
    out.mass.resize(n);

    const ArrayXd& p = cover.mass;
    const double a = rate / 4.0;
    const double b = 1.0 - rate / 2.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double left = p[k > 0 ? k - 1 : 0];
        const double right = p[k < n - 1 ? k + 1 : n - 1];
        out.mass[k] = a * (left + right) + b * p[k];
    }
    return out;
}

double pmf_mean(const QuantizedPmf& pmf) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < pmf.mass.size(); ++k) m += static_cast<double>(k) * pmf.mass[k];
    return m;
}

double pmf_variance(const QuantizedPmf& pmf) {
    const double m = pmf_mean(pmf);
    double v = 0.0;
    for (Eigen::Index k = 0; k < pmf.mass.size(); ++k) {
        const double d = static_cast<double>(k) - m;
        v += d * d * pmf.mass[k];
    }
    return v;
}

}  // namespace lsbm
