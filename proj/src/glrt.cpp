#include "lsbm/glrt.hpp"

#include "lsbm/lrt.hpp"
#include "lsbm/normal.hpp"

#include <stdexcept>

namespace lsbm {

namespace {

using RowMajorXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRowMajor = Eigen::Map<RowMajorXd>;

void require_filterable(const GrayImage& image) {
    image.validate();
    if (image.width < 3 || image.height < 3)
        throw std::invalid_argument("glrt: image smaller than 3x3");
}

RowMajorXd to_matrix(const GrayImage& image) {
    return Eigen::Map<const Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
               image.pixels.data(), image.height, image.width)
        .cast<double>();
}

}  // namespace

ArrayXd estimate_expectation(const GrayImage& image) {
    require_filterable(image);
    const int w = image.width, h = image.height;
    const RowMajorXd z = to_matrix(image);

    ArrayXd out = ArrayXd::Zero(static_cast<Eigen::Index>(w) * h);
    MapRowMajor theta(out.data(), h, w);
    const int iw = w - 2, ih = h - 2;
    theta.block(1, 1, ih, iw) =
        0.25 * (2.0 * (z.block(0, 1, ih, iw) + z.block(2, 1, ih, iw) +
                       z.block(1, 0, ih, iw) + z.block(1, 2, ih, iw)) -
                (z.block(0, 0, ih, iw) + z.block(0, 2, ih, iw) +
                 z.block(2, 0, ih, iw) + z.block(2, 2, ih, iw)));
    return out;
}

ArrayXd estimate_variance(const GrayImage& image) {
    require_filterable(image);
    const int w = image.width, h = image.height;
    const RowMajorXd z = to_matrix(image);

    ArrayXd out = ArrayXd::Zero(static_cast<Eigen::Index>(w) * h);
    MapRowMajor var(out.data(), h, w);
    const int iw = w - 2, ih = h - 2;
    const auto north = z.block(0, 1, ih, iw).array();
    const auto south = z.block(2, 1, ih, iw).array();
    const auto west = z.block(1, 0, ih, iw).array();
    const auto east = z.block(1, 2, ih, iw).array();
    const auto mean = 0.25 * (north + south + west + east);
    var.block(1, 1, ih, iw) =
        0.25 * ((north - mean).square() + (south - mean).square() +
                (west - mean).square() + (east - mean).square());
    return out;
}

EstimatedField estimate_field(const GrayImage& image) {
    EstimatedField field;
    field.width = image.width;
    field.height = image.height;
    field.theta_hat = estimate_expectation(image);
    field.sigma_hat = estimate_variance(image).sqrt();
    field.valid = ArrayXb::Constant(image.size(), false);
    for (int y = 1; y < image.height - 1; ++y)
        for (int x = 1; x < image.width - 1; ++x)
            field.valid[static_cast<Eigen::Index>(y) * image.width + x] = true;
    return field;
}

double estimated_log_lr(int z, double theta_hat, double sigma_hat, double alpha_stab) {
    if (!(sigma_hat >= 0.0)) throw std::invalid_argument("estimated_log_lr: sigma_hat < 0");
    const double scale = alpha_stab + sigma_hat;
    const double a = (static_cast<double>(z) - theta_hat) / (scale * scale);
    return log_add_exp(a, -a);
}

double glrt_statistic(const GrayImage& image, const GlrtConfig& config) {
    require_filterable(image);
    config.validate();

    const EstimatedField field = estimate_field(image);
    const int w = image.width, h = image.height;
    const double log2 = 0.6931471805599453;

    double sum = 0.0;
    std::int64_t n_valid = 0;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const Eigen::Index i = static_cast<Eigen::Index>(y) * w + x;
            const double scale = config.alpha_stab + field.sigma_hat[i];
            const double scale_sq = scale * scale;
            const double a = (static_cast<double>(image.pixels[i]) - field.theta_hat[i]) / scale_sq;
            sum += log_add_exp(a, -a) - log2 - 1.0 / (4.0 * scale_sq);
            ++n_valid;
        }
    }
    if (n_valid == 0) throw std::invalid_argument("glrt_statistic: no valid pixels");
    return sum / std::sqrt(static_cast<double>(n_valid));
}

TestOutcome detect(const GrayImage& image, const GlrtConfig& config) {
    const double statistic = glrt_statistic(image, config);
    return decide(statistic, config.threshold, config.alpha0);
}

}  // namespace lsbm
