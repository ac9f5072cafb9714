#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsbm/pixel_model.hpp"

#include <cmath>

using namespace lsbm;

TEST_CASE("quantize maps half-open intervals and clamps") {
    CHECK(quantize(127.4) == 127);
    CHECK(quantize(127.5) == 128);  // k - 1/2 inclusive
    CHECK(quantize(300.0) == 255);
    CHECK(quantize(-3.0) == 0);
    CHECK(quantize(0.49) == 0);
    CHECK(quantize(254.5) == 255);
    CHECK(quantize(100.0, 4) == 15);
    CHECK_THROWS_AS(quantize(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(quantize(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("cover_pmf center mass matches the erf oracle") {
    // theta=128, sigma=0.75: mass[128] = 2*Phi(2/3) - 1
    const QuantizedPmf p = cover_pmf({128.0, 0.75});
    CHECK(p.mass[128] == doctest::Approx(0.4950149249061541).epsilon(1e-12));
}

TEST_CASE("cover_pmf is symmetric about integer theta") {
    for (double sigma : {0.5, 1.0, 3.0}) {
        const QuantizedPmf p = cover_pmf({128.0, sigma});
        CHECK(p.mass[127] == doctest::Approx(p.mass[129]).epsilon(1e-14));
        CHECK(p.mass[120] == doctest::Approx(p.mass[136]).epsilon(1e-12));
    }
}

TEST_CASE("pmfs sum to one over the parameter grid") {
    for (double sigma : {0.3, 0.5, 0.75, 1.0, 2.0, 5.0, 20.0}) {
        for (double theta : {10.0, 127.5, 128.0, 245.0}) {
            const QuantizedPmf p = cover_pmf({theta, sigma});
            CHECK(std::abs(p.mass.sum() - 1.0) < 1e-9);
            CHECK_NOTHROW(p.validate());
            for (double rate : {0.25, 1.0, 2.0}) {
                const QuantizedPmf q = stego_pmf(p, rate);
                CHECK(std::abs(q.mass.sum() - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("cover_pmf rejects invalid parameters") {
    CHECK_THROWS_AS(cover_pmf({-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(cover_pmf({260.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(cover_pmf({128.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(cover_pmf({128.0, -2.0}), std::invalid_argument);
}

TEST_CASE("integer shift equivariance is exact") {
    for (double theta : {100.0, 127.5, 200.25}) {
        const QuantizedPmf a = cover_pmf({theta, 1.5});
        const QuantizedPmf b = cover_pmf({theta + 1.0, 1.5});
        for (int k = 40; k < 250; ++k) CHECK(b.mass[k + 1] == a.mass[k]);
    }
}

TEST_CASE("stego_pmf at rate 0 is bit-identical to the cover") {
    const QuantizedPmf p = cover_pmf({77.3, 2.0});
    const QuantizedPmf q = stego_pmf(p, 0.0);
    for (int k = 0; k < 256; ++k) CHECK(q.mass[k] == p.mass[k]);
}

TEST_CASE("stego_pmf coefficients at interior bins") {
    const QuantizedPmf p = cover_pmf({128.0, 0.75});

    SUBCASE("R=2 is the two-sided shift average") {
        const QuantizedPmf q = stego_pmf(p, 2.0);
        for (int k = 100; k <= 156; ++k)
            CHECK(q.mass[k] == doctest::Approx((p.mass[k - 1] + p.mass[k + 1]) / 2.0));
    }
    SUBCASE("R=1 center bin matches the erf oracle") {
        const QuantizedPmf q = stego_pmf(p, 1.0);
        CHECK(q.mass[128] == doctest::Approx(0.36237866525244894).epsilon(1e-12));
        CHECK(q.mass[128] ==
              doctest::Approx(0.25 * (p.mass[127] + p.mass[129]) + 0.5 * p.mass[128]));
    }
}

TEST_CASE("stego_pmf rejects rates outside [0,2]") {
    const QuantizedPmf p = cover_pmf({128.0, 1.0});
    CHECK_THROWS_AS(stego_pmf(p, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(stego_pmf(p, 2.1), std::invalid_argument);
}

TEST_CASE("embedding inflates variance") {
    for (double sigma : {0.5, 1.0, 4.0}) {
        for (double theta : {96.0, 128.4}) {
            const QuantizedPmf p = cover_pmf({theta, sigma});
            const double v = pmf_variance(p);
            for (double rate : {0.1, 0.5, 1.0, 2.0})
                CHECK(pmf_variance(stego_pmf(p, rate)) >= v);
        }
    }
}

TEST_CASE("stego_pmf is affine in the rate") {
    const QuantizedPmf p = cover_pmf({130.6, 1.3});
    const QuantizedPmf q2 = stego_pmf(p, 2.0);
    for (double rate : {0.1, 0.45, 0.8, 1.0}) {
        const QuantizedPmf q = stego_pmf(p, rate);
        for (int k = 0; k < 256; ++k) {
            const double mix = rate / 2.0 * q2.mass[k] + (1.0 - rate / 2.0) * p.mass[k];
            CHECK(q.mass[k] == doctest::Approx(mix).epsilon(1e-12));
        }
    }
}
