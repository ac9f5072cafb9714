#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsbm/embedder.hpp"
#include "lsbm/lrt.hpp"
#include "lsbm/normal.hpp"
#include "lsbm/pixel_model.hpp"
#include "lsbm/rng.hpp"

#include <cmath>

using namespace lsbm;

namespace {

GrayImage draw_cover(const ParamField& field, std::uint64_t seed) {
    GrayImage img;
    img.width = static_cast<int>(field.size());
    img.height = 1;
    img.pixels.resize(field.size());
    const CounterRng rng(seed, 0x10);
    for (Eigen::Index i = 0; i < field.size(); ++i)
        img.pixels[i] =
            quantize(field.theta[i] + field.sigma[i] * rng.gaussian(static_cast<std::uint64_t>(i)));
    return img;
}

}  // namespace

TEST_CASE("log_lr_pixel closed-form values") {
    CHECK(log_lr_pixel(128, {128.0, 0.9}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // z - theta = 1, sigma = 1: log(2 cosh 1), high-precision oracle value
    CHECK(log_lr_pixel(129, {128.0, 1.0}) == doctest::Approx(1.1269280110429725).epsilon(1e-14));
}

TEST_CASE("log_lr_pixel is even and increasing in |z - theta|") {
    const PixelParams p{140.0, 1.7};
    for (int d = 1; d < 40; ++d) {
        CHECK(log_lr_pixel(140 + d, p) == doctest::Approx(log_lr_pixel(140 - d, p)).epsilon(1e-14));
        CHECK(log_lr_pixel(140 + d, p) > log_lr_pixel(140 + d - 1, p));
    }
}

TEST_CASE("log_lr_pixel stays finite in the deep tail") {
    CHECK(std::isfinite(log_lr_pixel(255, {0.0, 0.6036}))); // |a| ~ 700
    CHECK(std::isfinite(log_lr_pixel(255, {0.0, 0.02})));   // |a| ~ 6e5
}

TEST_CASE("exact_lr_pixel matches the erf oracle") {
    CHECK(exact_lr_pixel(128, {128.0, 1.0}) == doctest::Approx(0.6312734513299048).epsilon(1e-12));
    CHECK(exact_lr_pixel(128, {128.0, 2.0}) == doctest::Approx(0.8847777522450392).epsilon(1e-12));
    CHECK(exact_lr_pixel(128, {128.0, 2.0}) < 1.0);  // cover value is the likeliest
}

TEST_CASE("exact_lr_pixel rejects non-interior and out-of-support inputs") {
    CHECK_THROWS_AS(exact_lr_pixel(0, {128.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exact_lr_pixel(255, {128.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exact_lr_pixel(200, {128.0, 0.5}), std::domain_error);
}

TEST_CASE("log-sum-exp form approaches the exact LR as sigma grows") {
    // |lr - (log exact + log 2 + 1/(2 sigma^2))| shrinks with sigma;
    // the epsilon correction of the pmf ratio fades beyond sigma ~ 1
    double previous = 1e9;
    for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
        const PixelParams p{128.0, sigma};
        const double diff = std::abs(log_lr_pixel(129, p) -
                                     (std::log(exact_lr_pixel(129, p)) + std::log(2.0) +
                                      1.0 / (2.0 * sigma * sigma)));
        CHECK(diff <= previous);
        previous = diff;
    }
    CHECK(previous < 1e-4);  // nearly exact by sigma = 8
}

TEST_CASE("moments_r2 reproduces the direct-summation oracle") {
    struct Ref { double theta, sigma, mu0, mu2, var0, var2; };
    const Ref refs[] = {
        {128.0, 0.5, 1.7533533283417098, 4.120066690181896, 2.4612007511966714,
         4.309068310972027},
        {127.5, 0.75, 1.3554430889321125, 2.033144080547227, 0.4554523145136764,
         1.228643409671034},
        {128.0, 2.0, 0.8082094570351639, 0.8337966968230168, 0.022281222089814312,
         0.03137304973371391},
    };
    for (const Ref& r : refs) {
        const MomentSet m = moments_r2(ParamField::constant(5, r.theta, r.sigma));
        CHECK(m.mu0 == doctest::Approx(r.mu0).epsilon(1e-12));
        CHECK(m.mu2 == doctest::Approx(r.mu2).epsilon(1e-12));
        CHECK(m.var0 == doctest::Approx(r.var0).epsilon(1e-11));
        CHECK(m.var2 == doctest::Approx(r.var2).epsilon(1e-11));
        CHECK(m.n == 5);
    }
}

TEST_CASE("moment gap vanishes for large sigma") {
    const MomentSet m = moments_r2(ParamField::constant(1, 128.0, 20.0));
    CHECK(m.mu2 - m.mu0 > 0.0);
    CHECK(m.mu2 - m.mu0 < 1e-3);
}

TEST_CASE("moments are invariant under integer shifts of theta") {
    const MomentSet a = moments_r2(ParamField::constant(1, 100.0, 0.8));
    const MomentSet b = moments_r2(ParamField::constant(1, 101.0, 0.8));
    CHECK(a.mu0 == doctest::Approx(b.mu0).epsilon(1e-12));
    CHECK(a.mu2 == doctest::Approx(b.mu2).epsilon(1e-12));
    CHECK(a.var0 == doctest::Approx(b.var0).epsilon(1e-12));
    CHECK(a.var2 == doctest::Approx(b.var2).epsilon(1e-12));
}

TEST_CASE("embedding can only raise the expected log-LR") {
    for (double theta : {127.5, 128.0, 128.25})
        for (double sigma : {0.5, 0.75, 1.0, 2.0}) {
            const MomentSet m = moments_r2(ParamField::constant(1, theta, sigma));
            CHECK(m.mu2 >= m.mu0);
        }
}

TEST_CASE("single-pixel mu0 agrees with a 1e7-draw Monte Carlo") {
    const double theta = 128.0, sigma = 0.75;
    const MomentSet m = moments_r2(ParamField::constant(1, theta, sigma));
    const CounterRng rng(271828, 0x44);
    const std::int64_t n = 10'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const int z = quantize(theta + sigma * rng.gaussian(static_cast<std::uint64_t>(i)));
        const double lr = log_lr_pixel(z, {theta, sigma});
        sum += lr;
        sum_sq += lr * lr;
    }
    const double mc_mean = sum / static_cast<double>(n);
    const double mc_var = sum_sq / static_cast<double>(n) - mc_mean * mc_mean;
    const double se = std::sqrt(m.var0 / static_cast<double>(n));
    CHECK(std::abs(mc_mean - m.mu0) <= 4.0 * se);
    CHECK(mc_var == doctest::Approx(m.var0).epsilon(0.01));
}

TEST_CASE("moments_general collapses exactly at the endpoints") {
    const MomentSet m = moments_r2(ParamField::constant(1, 128.0, 0.5));
    const auto [mu_0, var_0] = moments_general(m, 0.0);
    CHECK(mu_0 == m.mu0);
    CHECK(var_0 == m.var0);
    const auto [mu_2, var_2] = moments_general(m, 2.0);  // conceptual oracle case
    CHECK(mu_2 == m.mu2);
    CHECK(var_2 == m.var2);
    CHECK_THROWS_AS(moments_general(m, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(moments_general(m, -0.1), std::invalid_argument);
}

TEST_CASE("mu_R is affine in R") {
    const MomentSet m = moments_r2(ParamField::constant(1, 127.5, 0.6));
    const auto [mu_a, var_a] = moments_general(m, 0.2);
    const auto [mu_b, var_b] = moments_general(m, 0.8);
    const auto [mu_mid, var_mid] = moments_general(m, 0.5);
    CHECK(mu_mid == doctest::Approx(0.5 * mu_a + 0.5 * mu_b).epsilon(1e-13));
    (void)var_a; (void)var_b; (void)var_mid;
}

TEST_CASE("mixture moments match Monte Carlo sampling under Q^R") {
    const double theta = 128.0, sigma = 0.5, rate = 0.1;
    const MomentSet m = moments_r2(ParamField::constant(1, theta, sigma));
    const auto [mu_r, var_r] = moments_general(m, rate);

    const CounterRng noise(1618, 0x7);
    const CounterRng embed(1618, 0x8);
    const std::int64_t n = 10'000'000;
    double sum = 0.0, sum_sq = 0.0, sum_4 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        int z = quantize(theta + sigma * noise.gaussian(static_cast<std::uint64_t>(i)));
        const std::uint64_t h = embed.word(static_cast<std::uint64_t>(i));
        const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
        if (u < rate) {  // carries a bit; moves iff lsb mismatches
            const int mbit = static_cast<int>(h & 1u);
            if ((z & 1) != mbit) {
                int dir = (h >> 1) & 1u ? 1 : -1;
                if (z == 0) dir = 1;
                if (z == 255) dir = -1;
                z += dir;
            }
        }
        const double lr = log_lr_pixel(z, {theta, sigma});
        sum += lr;
        sum_sq += lr * lr;
        sum_4 += (lr - mu_r) * (lr - mu_r) * (lr - mu_r) * (lr - mu_r);
    }
    const double nd = static_cast<double>(n);
    const double mc_mean = sum / nd;
    const double mc_var = sum_sq / nd - mc_mean * mc_mean;
    const double se_mean = std::sqrt(var_r / nd);
    const double se_var = std::sqrt((sum_4 / nd - var_r * var_r) / nd);
    CHECK(std::abs(mc_mean - mu_r) <= 4.0 * se_mean);
    CHECK(std::abs(mc_var - var_r) <= 4.0 * se_var);
}

TEST_CASE("threshold is the upper normal quantile") {
    CHECK(threshold(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(threshold(0.1) == doctest::Approx(1.2815515655446004).epsilon(1e-13));
    CHECK(threshold(0.01) == doctest::Approx(2.3263478740408408).epsilon(1e-13));
    for (double a : {0.5, 0.1, 0.01, 0.001})
        CHECK(std::abs(normal_cdf(threshold(a)) - (1.0 - a)) < 1e-10);
    CHECK_THROWS_AS(threshold(0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold(1.0), std::invalid_argument);
}

TEST_CASE("power function limits") {
    MomentSet equal;
    equal.mu0 = equal.mu2 = 1.0;
    equal.var0 = equal.var2 = 2.0;
    equal.n = 1;
    for (double a : {0.3, 0.1, 0.01})
        CHECK(power_r2(a, equal, 1000) == doctest::Approx(a).epsilon(1e-12));

    const MomentSet m = moments_r2(ParamField::constant(1, 128.0, 0.5));
    CHECK(power_r2(0.01, m, 1'000'000'000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(power_general(0.01, m, 1'000'000'000'000LL, 0.1) == doctest::Approx(1.0));

    // R -> 0 at fixed N: power -> alpha0
    for (double a : {0.1, 0.01})
        CHECK(std::abs(power_general(a, m, 1000, 1e-4) - a) < 1e-3);

    // R = 2 coincides with the fully-modified power
    CHECK(power_general(0.05, m, 1000, 2.0) == doctest::Approx(power_r2(0.05, m, 1000)));

    MomentSet degenerate = m;
    degenerate.var2 = 0.0;
    CHECK_THROWS_AS(power_r2(0.1, degenerate, 10), std::invalid_argument);
    CHECK_THROWS_AS(power_general(0.1, m, 10, 0.0), std::invalid_argument);
}

TEST_CASE("power_general is continuous in R") {
    const MomentSet m = moments_r2(ParamField::constant(1, 128.0, 0.5));
    double prev = power_general(0.1, m, 1000, 0.01);
    for (double r = 0.02; r <= 1.0; r += 0.01) {
        const double p = power_general(0.1, m, 1000, r);
        CHECK(p >= prev - 1e-12);  // also monotone in R here
        CHECK(std::abs(p - prev) < 0.12);
        prev = p;
    }
}

TEST_CASE("decide uses a strict inequality") {
    CHECK(decide(0.0, 0.0, 0.5).decision == Hypothesis::H0);
    CHECK(decide(3.2, 1.2816, 0.1).decision == Hypothesis::H1);
    CHECK(decide(-1.0, 1.2816, 0.1).decision == Hypothesis::H0);
    const TestOutcome out = decide(2.5, 1.0, 0.05);
    CHECK(out.statistic == 2.5);
    CHECK(out.threshold == 1.0);
    CHECK(out.alpha0 == 0.05);
}

TEST_CASE("normalized statistic at z = theta is the deterministic formula") {
    const Eigen::Index n = 400;
    const ParamField field = ParamField::constant(n, 131.0, 0.8);
    const MomentSet m = moments_r2(field);
    GrayImage img;
    img.width = static_cast<int>(n);
    img.height = 1;
    img.pixels = ArrayXi::Constant(n, 131);
    const double nd = static_cast<double>(n);
    const double expected = (nd * std::log(2.0) - nd * m.mu0) / std::sqrt(nd * m.var0);
    CHECK(normalized_statistic(img, field, m) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("normalized statistic validates its inputs") {
    const ParamField field = ParamField::constant(16, 128.0, 1.0);
    const MomentSet m = moments_r2(field);
    GrayImage img;
    img.width = 4;
    img.height = 5;
    img.pixels = ArrayXi::Constant(20, 128);
    CHECK_THROWS_AS(normalized_statistic(img, field, m), std::invalid_argument);

    img.height = 4;
    img.pixels = ArrayXi::Constant(16, 128);
    MomentSet zero = m;
    zero.var0 = 0.0;
    CHECK_THROWS_AS(normalized_statistic(img, field, zero), std::invalid_argument);
}

TEST_CASE("under H0 the statistic is standard normal at large N") {
    const Eigen::Index n_pixels = 1000;
    const int n_trials = 10000;
    const ParamField field = ParamField::constant(n_pixels, 128.0, 0.5);
    const MomentSet m = moments_r2(field);

    double sum = 0.0, sum_sq = 0.0;
    int fa10 = 0, fa01 = 0;
    const double t10 = threshold(0.1), t01 = threshold(0.01);
    for (int t = 0; t < n_trials; ++t) {
        const GrayImage img = draw_cover(field, mix_seed(90210, static_cast<std::uint64_t>(t)));
        const double s = normalized_statistic(img, field, m);
        sum += s;
        sum_sq += s * s;
        fa10 += s > t10 ? 1 : 0;
        fa01 += s > t01 ? 1 : 0;
    }
    const double nt = n_trials;
    const double mean = sum / nt;
    const double var = sum_sq / nt - mean * mean;
    CHECK(std::abs(mean) <= 4.0 / std::sqrt(nt));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));

    // Theorem 1 calibration at desk scale
    const double fa10_rate = fa10 / nt, fa01_rate = fa01 / nt;
    CHECK(std::abs(fa10_rate - 0.1) <= 4.0 * std::sqrt(0.1 * 0.9 / nt));
    CHECK(std::abs(fa01_rate - 0.01) <= 4.0 * std::sqrt(0.01 * 0.99 / nt));
}
