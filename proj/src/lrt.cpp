#include "lsbm/lrt.hpp"

#include "lsbm/normal.hpp"
#include "lsbm/pixel_model.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace lsbm {

double log_lr_pixel(int z, const PixelParams& params) {
    params.validate();
    const double a = (static_cast<double>(z) - params.theta) / (params.sigma * params.sigma);
    return log_add_exp(a, -a);
}

double exact_lr_pixel(int z, const PixelParams& params, int bit_depth) {
    const int max_value = (1 << bit_depth) - 1;
    if (z < 1 || z > max_value - 1)
        throw std::invalid_argument("exact_lr_pixel: z must be interior");
    const QuantizedPmf p = cover_pmf(params, bit_depth);
    const double denom = p.mass[z];
    if (!(denom >= 1e-300))
        throw std::domain_error("exact_lr_pixel: p[z] underflows, z out of support");
    return (p.mass[z - 1] + p.mass[z + 1]) / (2.0 * denom);
}

namespace {

struct PixelMoments {
    double e0, e0_sq, e2, e2_sq;
};

// Per-pixel expectations of the log-LR and its square under the cover pmf
// and under Q^{R=2}, summed over the D8 window.
PixelMoments pixel_moments(double theta, double sigma, int bit_depth) {
    const int max_value = (1 << bit_depth) - 1;
    const int lo = std::max(0, static_cast<int>(std::ceil(theta - 12.0 * sigma - 2.0)));
    const int hi = std::min(max_value, static_cast<int>(std::floor(theta + 12.0 * sigma + 2.0)));

    const PixelParams params{theta, sigma};
    const QuantizedPmf p = cover_pmf(params, bit_depth);
    const QuantizedPmf q2 = stego_pmf(p, 2.0);

    PixelMoments m{0.0, 0.0, 0.0, 0.0};
    for (int k = lo; k <= hi; ++k) {
        const double lr = log_lr_pixel(k, params);
        m.e0 += p.mass[k] * lr;
        m.e0_sq += p.mass[k] * lr * lr;
        m.e2 += q2.mass[k] * lr;
        m.e2_sq += q2.mass[k] * lr * lr;
    }
    return m;
}

}  // namespace

MomentSet moments_r2(const ParamField& field, int bit_depth) {
    field.validate();
    const Eigen::Index n = field.size();

    // Fields from synthetic scenes repeat (theta, sigma) pairs heavily.
    std::map<std::pair<double, double>, PixelMoments> cache;

    double mu0 = 0.0, mu2 = 0.0, var0 = 0.0, var2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::pair<double, double> key{field.theta[i], field.sigma[i]};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, pixel_moments(key.first, key.second, bit_depth)).first;
        const PixelMoments& m = it->second;
        mu0 += m.e0;
        mu2 += m.e2;
        var0 += m.e0_sq - m.e0 * m.e0;
        var2 += m.e2_sq - m.e2 * m.e2;
    }

    MomentSet out;
    out.n = static_cast<std::int64_t>(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    out.mu0 = mu0 * inv_n;
    out.mu2 = mu2 * inv_n;
    out.var0 = var0 * inv_n;
    out.var2 = var2 * inv_n;
    return out;
}

std::pair<double, double> moments_general(const MomentSet& m, double rate) {
    if (!(rate >= 0.0 && rate <= 2.0))
        throw std::invalid_argument("moments_general: rate outside [0,2]");
    if (rate == 0.0) return {m.mu0, m.var0};  // exact collapse at the endpoints
    if (rate == 2.0) return {m.mu2, m.var2};
    const double w = rate / 2.0;
    const double mu_r = w * m.mu2 + (1.0 - w) * m.mu0;
    const double var_r = w * (m.var2 + m.mu2 * m.mu2) +
                         (1.0 - w) * (m.var0 + m.mu0 * m.mu0) - mu_r * mu_r;
    return {mu_r, var_r};
}

double normalized_statistic(const GrayImage& image, const ParamField& field,
                            const MomentSet& moments) {
    image.validate();
    field.validate();
    if (field.size() != image.size())
        throw std::invalid_argument("normalized_statistic: field length != pixel count");
    if (!(moments.var0 > 0.0))
        throw std::invalid_argument("normalized_statistic: var0 must be > 0");

    const Eigen::Index n = image.size();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        sum += log_lr_pixel(image.pixels[i], {field.theta[i], field.sigma[i]});

    const double nd = static_cast<double>(n);
    return (sum - nd * moments.mu0) / std::sqrt(nd * moments.var0);
}

double threshold(double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw std::invalid_argument("threshold: alpha0 must be in (0,1)");
    return normal_quantile(1.0 - alpha0);
}

double power_r2(double alpha0, const MomentSet& m, std::int64_t n) {
    if (!(m.var2 > 0.0)) throw std::invalid_argument("power_r2: degenerate var2");
    if (!(m.var0 > 0.0)) throw std::invalid_argument("power_r2: degenerate var0");
    const double s0 = std::sqrt(m.var0);
    const double s2 = std::sqrt(m.var2);
    const double arg = (s0 / s2) * threshold(alpha0) +
                       std::sqrt(static_cast<double>(n)) * (m.mu0 - m.mu2) / s2;
    return 1.0 - normal_cdf(arg);
}

double power_general(double alpha0, const MomentSet& m, std::int64_t n, double rate) {
    if (!(rate > 0.0 && rate <= 2.0))
        throw std::invalid_argument("power_general: rate outside (0,2]");
    if (!(m.var0 > 0.0)) throw std::invalid_argument("power_general: degenerate var0");
    const auto [mu_r, var_r] = moments_general(m, rate);
    if (!(var_r > 0.0)) throw std::invalid_argument("power_general: degenerate var_R");
    const double s0 = std::sqrt(m.var0);
    const double s_r = std::sqrt(var_r);
    const double arg = (s0 / s_r) * threshold(alpha0) +
                       std::sqrt(static_cast<double>(n)) * (m.mu0 - mu_r) / s_r;
    return 1.0 - normal_cdf(arg);
}

TestOutcome decide(double statistic, double threshold, double alpha0) {
    TestOutcome out;
    out.statistic = statistic;
    out.threshold = threshold;
    out.alpha0 = alpha0;
    out.decision = statistic > threshold ? Hypothesis::H1 : Hypothesis::H0;
    return out;
}

}  // namespace lsbm
