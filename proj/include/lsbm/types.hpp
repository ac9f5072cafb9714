#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace lsbm {

using ArrayXd = Eigen::ArrayXd;
using ArrayXi = Eigen::ArrayXi;
using ArrayXb = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Per-pixel nuisance parameters: expectation theta and noise standard
/// deviation sigma, both in digital-number units.
struct PixelParams {
    double theta = 0.0;
    double sigma = 1.0;

    void validate() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("PixelParams: sigma must be > 0");
        if (!std::isfinite(theta)) throw std::invalid_argument("PixelParams: theta must be finite");
    }
};

/// Probability mass function over the grayscale set {0, ..., 2^B - 1}.
struct QuantizedPmf {
    int bit_depth = 8;
    ArrayXd mass;

    Eigen::Index levels() const { return mass.size(); }

    void validate() const {
        if (bit_depth < 1 || bit_depth > 16)
            throw std::invalid_argument("QuantizedPmf: bit_depth out of [1,16]");
        if (mass.size() != (Eigen::Index{1} << bit_depth))
            throw std::invalid_argument("QuantizedPmf: mass size != 2^bit_depth");
        if ((mass < -1e-15).any() || (mass > 1.0 + 1e-12).any())
            throw std::invalid_argument("QuantizedPmf: entries outside [0,1]");
        if (std::abs(mass.sum() - 1.0) > 1e-9)
            throw std::invalid_argument("QuantizedPmf: mass does not sum to 1");
    }
};

/// Rectangular grid of B-bit integer pixels, flat row-major storage:
/// pixel (x, y) lives at index y*width + x.
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    ArrayXi pixels;

    Eigen::Index size() const { return pixels.size(); }
    int max_value() const { return (1 << bit_depth) - 1; }

    int operator()(int x, int y) const { return pixels[static_cast<Eigen::Index>(y) * width + x]; }
    int& operator()(int x, int y) { return pixels[static_cast<Eigen::Index>(y) * width + x]; }

    void validate() const {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
        if (bit_depth < 1 || bit_depth > 16)
            throw std::invalid_argument("GrayImage: bit_depth out of [1,16]");
        if (pixels.size() != static_cast<Eigen::Index>(width) * height)
            throw std::invalid_argument("GrayImage: pixel count != width*height");
        if ((pixels < 0).any() || (pixels > max_value()).any())
            throw std::invalid_argument("GrayImage: pixel outside dynamic range");
    }
};

/// Known per-pixel parameters aligned with GrayImage flat indexing.
struct ParamField {
    ArrayXd theta;
    ArrayXd sigma;

    Eigen::Index size() const { return theta.size(); }

    static ParamField constant(Eigen::Index n, double theta, double sigma) {
        ParamField f;
        f.theta = ArrayXd::Constant(n, theta);
        f.sigma = ArrayXd::Constant(n, sigma);
        return f;
    }

    void validate() const {
        if (theta.size() != sigma.size())
            throw std::invalid_argument("ParamField: theta/sigma size mismatch");
        if (theta.size() == 0) throw std::invalid_argument("ParamField: empty");
        if (!(sigma > 0.0).all()) throw std::invalid_argument("ParamField: sigma must be > 0");
        if (!theta.isFinite().all()) throw std::invalid_argument("ParamField: theta must be finite");
    }
};

/// Mean expectation and mean variance of the per-pixel log-LR under the
/// cover hypothesis (mu0, var0) and under full +-1 modification (mu2, var2),
/// averaged over the n pixels they were computed from.
struct MomentSet {
    double mu0 = 0.0;
    double mu2 = 0.0;
    double var0 = 0.0;
    double var2 = 0.0;
    std::int64_t n = 0;
};

enum class Hypothesis { H0, H1 };

/// Decision record of a single test invocation.
struct TestOutcome {
    double statistic = 0.0;
    double threshold = 0.0;
    double alpha0 = 0.0;
    Hypothesis decision = Hypothesis::H0;
};

}  // namespace lsbm
