#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rmtdeco/analytics.hpp"
#include "rmtdeco/ensembles.hpp"
#include "rmtdeco/errors.hpp"

using namespace rmtdeco;
using namespace rmtdeco::analytics;

namespace {

constexpr double kPi = std::numbers::pi;

struct Averaged {
    oracle::Summary s1, s2, s3, s5;
};

/// Direct average of the phase factors over i.i.d. uniform energies on [-sqrt 3, sqrt 3].
Averaged sample_phases(double t, std::size_t samples, std::uint64_t seed) {
    RngStream rng(seed, 0);
    std::vector<double> a1, a2, a3, a5;
    for (std::size_t k = 0; k < samples; ++k) {
        const double e1 = rng.uniform(-kSqrt3, kSqrt3);
        const double e2 = rng.uniform(-kSqrt3, kSqrt3);
        const double e3 = rng.uniform(-kSqrt3, kSqrt3);
        const double e4 = rng.uniform(-kSqrt3, kSqrt3);
        a1.push_back(std::cos(t * (e1 - e2 + e3 - e4)));
        a2.push_back(std::cos(t * (e1 - e2)));
        a3.push_back(std::cos(t * (2.0 * e1 - e2 - e3)));
        a5.push_back(std::cos(2.0 * t * (e1 - e2)));
    }
    return {oracle::summarize(a1), oracle::summarize(a2), oracle::summarize(a3), oracle::summarize(a5)};
}

void check_within_3se(const oracle::Summary& s, double expected) {
    CHECK(std::abs(s.mean - expected) <= 3.0 * s.se + 1e-15);
}

}  // namespace

TEST_CASE("f_uniform values") {
    CHECK(f_uniform(0.0) == 1.0);
    CHECK(std::abs(f_uniform(kPi / kSqrt3)) < 1e-15);
    CHECK(f_uniform(kPi / (2.0 * kSqrt3)) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    CHECK(f_uniform(-0.7) == f_uniform(0.7));
    // Series branch joins the closed form smoothly.
    for (double t : {1e-9, 1e-6, 5e-5, 5.7e-5, 6e-5, 1e-4}) {
        const double x = kSqrt3 * t;
        CHECK(f_uniform(t) == doctest::Approx(1.0 - x * x / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("spectral averages at fixed times") {
    const auto zero = spectral_averages(0.0);
    CHECK(zero.s1 == 1.0);
    CHECK(zero.s2 == 1.0);
    CHECK(zero.s3 == 1.0);
    CHECK(zero.s4 == 1.0);
    CHECK(zero.s5 == 1.0);

    const auto filled = spectral_averages(kPi / kSqrt3);
    CHECK(std::abs(filled.s1) < 1e-30);
    CHECK(std::abs(filled.s2) < 1e-30);
    CHECK(std::abs(filled.s3) < 1e-30);
    CHECK(filled.s4 == 1.0);
    const double f2 = f_uniform(2.0 * kPi / kSqrt3);
    CHECK(filled.s5 == doctest::Approx(f2 * f2).epsilon(1e-14));
}

TEST_CASE("property: spectral averages lie in [-1, 1] with s4 = 1") {
    RngStream rng(20, 0);
    for (int c = 0; c < 100; ++c) {
        const auto s = spectral_averages(rng.uniform(-40.0, 40.0));
        for (double v : {s.s1, s.s2, s.s3, s.s5}) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
        CHECK(s.s4 == 1.0);
    }
}

TEST_CASE("spectral averages match direct sampling of uniform energies") {
    std::uint64_t seed = 21;
    for (double t : {0.3, 1.0, 3.0}) {
        const auto s = spectral_averages(t);
        const auto mc = sample_phases(t, 40000, seed++);
        check_within_3se(mc.s1, s.s1);
        check_within_3se(mc.s2, s.s2);
        check_within_3se(mc.s3, s.s3);
        check_within_3se(mc.s5, s.s5);
    }
    const auto half = sample_phases(0.5, 100000, 30);
    check_within_3se(half.s1, std::pow(f_uniform(0.5), 4));
}

TEST_CASE("short-time expansion") {
    CHECK(short_time_coefficient(4, 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(short_time_coefficient(10, 10) == doctest::Approx(27.0 / 17.0).epsilon(1e-15));
    CHECK(short_time_coefficient(10, 10) == doctest::Approx(1.58824).epsilon(1e-5));
    CHECK(short_time_coefficient(4, 4, 2.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(short_time_purity(0.1, 4, 4) == doctest::Approx(0.99).epsilon(1e-15));
    for (std::size_t m = 1; m <= 30; ++m)
        for (double t : {0.0, 0.5, 7.0}) {
            CHECK(short_time_purity(t, 1, m) == 1.0);
            CHECK(short_time_purity(t, m, 1) == 1.0);
        }
    CHECK_THROWS_AS(short_time_coefficient(0, 4), DimensionError);
}

TEST_CASE("property: short-time coefficient within [0, 2]") {
    for (std::size_t n = 1; n <= 64; ++n)
        for (std::size_t m = 1; m <= 64; ++m) {
            const double c = short_time_coefficient(n, m);
            CHECK(c >= 0.0);
            CHECK(c <= 2.0);
        }
}

TEST_CASE("first-minimum and plateau closed forms") {
    CHECK(i_min_coe(4, 4) == doctest::Approx(2450.0 / 5168.0).epsilon(1e-15));
    CHECK(i_min_coe(4, 4) == doctest::Approx(0.474071).epsilon(1e-6));
    CHECK(i_min_coe(10, 10) == doctest::Approx(206162.0 / 1040300.0).epsilon(1e-15));
    CHECK(i_min_coe(2, 2) == doctest::Approx(57.0 / 70.0).epsilon(1e-15));
    CHECK(i_infinity(4, 4) == doctest::Approx(65088.0 / 134640.0).epsilon(1e-15));
    CHECK(i_infinity(4, 4) == doctest::Approx(0.483422).epsilon(1e-6));
    CHECK(i_infinity(10, 10) == doctest::Approx(22565748.0 / 113569248.0).epsilon(1e-15));
    for (std::size_t m = 1; m <= 40; ++m) {
        CHECK(i_min_coe(1, m) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(i_infinity(1, m) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(i_infinity(m, 1) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(i_min_coe(3, 0), DimensionError);
    CHECK_THROWS_AS(i_infinity(0, 3), DimensionError);
}

TEST_CASE("property: closed forms are symmetric and ordered") {
    for (std::size_t n = 1; n <= 64; ++n)
        for (std::size_t m = 1; m <= 64; ++m) {
            CHECK(i_min_coe(n, m) == i_min_coe(m, n));
            CHECK(i_infinity(n, m) == i_infinity(m, n));
            if (n >= 2 && m >= 2) CHECK(i_min_coe(n, m) < i_infinity(n, m));
        }
}

TEST_CASE("property: large-N approach to 1/n + 1/m from below") {
    for (std::size_t n = 8; n <= 64; ++n) {
        const double big = static_cast<double>(n * n);
        const double s = static_cast<double>(2 * n);
        for (double value : {i_infinity(n, n), i_min_coe(n, n)}) {
            CHECK(value < s / big);
            CHECK(s / big - value <= s / (big * big));
        }
    }
}

TEST_CASE("weak-coupling variance") {
    CHECK(weak_variance(0.0, 16) == 1.0);
    CHECK(weak_variance(0.03, 16) == doctest::Approx(1.0135).epsilon(1e-14));
    CHECK(weak_variance(0.01, 100) == doctest::Approx(1.0099).epsilon(1e-14));
    CHECK(weak_variance(0.5, 1) == 1.0);
    CHECK_THROWS_AS(weak_variance(0.1, 0), DimensionError);
    CHECK_THROWS_AS(weak_variance(-0.1, 4), std::invalid_argument);
}

TEST_CASE("time scales") {
    const auto ts = time_scales(16);
    CHECK(ts.heisenberg_time == doctest::Approx(16.0 * kPi / kSqrt3).epsilon(1e-15));
    CHECK(ts.heisenberg_time == doctest::Approx(29.0208).epsilon(1e-5));
    CHECK(ts.first_minimum_time == doctest::Approx(1.8138).epsilon(1e-4));
    CHECK(ts.inverse_spectrum_length == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-15));
    for (std::size_t n = 1; n <= 200; ++n) {
        const auto s = time_scales(n);
        CHECK(std::abs(s.heisenberg_time * s.mean_spacing - 2.0 * kPi) < 1e-14);
        CHECK(s.partial_revival_time == s.heisenberg_time / 2.0);
        CHECK(std::abs(s.heisenberg_time - static_cast<double>(n) * kPi / kSqrt3) < 1e-12);
    }
    CHECK_THROWS_AS(time_scales(0), DimensionError);
}
