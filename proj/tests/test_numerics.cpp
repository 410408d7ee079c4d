#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "fracdim/numerics.hpp"
#include "oracles.hpp"

using namespace fracdim;

namespace {

std::vector<double> gaussian_vector(std::size_t n, uint32_t seed) {
    std::mt19937 engine(seed);
    std::normal_distribution<double> dist;
    std::vector<double> out(n);
    for (auto& v : out) v = dist(engine);
    return out;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("least squares recovers an exact line") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    const auto fit = linear_least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.n_points == 4);
}

TEST_CASE("least squares on the hand-computed three-point set") {
    // (0,0), (1,2), (2,2): slope 1, intercept 1/3, R^2 = 1 - (2/3)/(8/3).
    const std::vector<double> x{0.0, 1.0, 2.0};
    const std::vector<double> y{0.0, 2.0, 2.0};
    const auto fit = linear_least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(fit.r_squared == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("least squares defines r_squared as 1 for constant y") {
    const std::vector<double> x{0.0, 1.0, 2.0};
    const std::vector<double> y{5.0, 5.0, 5.0};
    const auto fit = linear_least_squares(x, y);
    CHECK(fit.slope == 0.0);
    CHECK(fit.r_squared == 1.0);
}

TEST_CASE("least squares rejects unusable input") {
    const std::vector<double> two{1.0, 2.0};
    const std::vector<double> three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)linear_least_squares(two, three), std::invalid_argument);
    CHECK_THROWS_AS((void)linear_least_squares({}, {}), std::invalid_argument);
    const std::vector<double> same_x{2.0, 2.0, 2.0};
    CHECK_THROWS_AS((void)linear_least_squares(same_x, three), std::invalid_argument);
}

TEST_CASE("least squares residuals are orthogonal to the regressor") {
    const auto x = gaussian_vector(200, 11);
    auto y = gaussian_vector(200, 12);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.7 * x[i] - 0.3;
    const auto fit = linear_least_squares(x, y);
    double sum_r = 0.0, sum_rx = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sum_r += r;
        sum_rx += r * x[i];
        scale += std::fabs(y[i]);
    }
    CHECK(std::fabs(sum_r) <= 1e-9 * scale);
    CHECK(std::fabs(sum_rx) <= 1e-9 * scale);
}

TEST_CASE("median handles odd, even and frozen inputs") {
    CHECK(median(std::vector<double>{3.0, 1.0, 2.0}) == 2.0);
    CHECK(median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(median(std::vector<double>{1.38, 1.41, 1.40, 1.45, 1.39}) == 1.40);
    CHECK_THROWS_AS((void)median({}), std::invalid_argument);
}

TEST_CASE("median does not depend on ordering") {
    auto values = gaussian_vector(101, 21);
    const double expected = median(values);
    std::mt19937 engine(22);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(values.begin(), values.end(), engine);
        CHECK(median(values) == expected);
    }
}

TEST_CASE("box plot quartiles interpolate like the common quantile rule") {
    const std::vector<double> ranks{1, 2, 3, 4, 5, 6, 7, 8};
    const auto stats = box_plot_stats(ranks);
    CHECK(stats.q1 == doctest::Approx(2.75).epsilon(1e-14));
    CHECK(stats.median == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(stats.q3 == doctest::Approx(6.25).epsilon(1e-14));
    CHECK(stats.min == 1.0);
    CHECK(stats.max == 8.0);
    CHECK(stats.outliers.empty());
}

TEST_CASE("box plot flags tukey outliers and keeps extremes") {
    const std::vector<double> values{0.0, 0.0, 0.0, 0.0, 100.0};
    const auto stats = box_plot_stats(values);
    REQUIRE(stats.outliers.size() == 1);
    CHECK(stats.outliers[0] == 100.0);
    CHECK(stats.max == 100.0);  // extremes include outliers
    CHECK(stats.min == 0.0);

    const std::vector<double> flat{2.0, 2.0, 2.0, 2.0};
    const auto flat_stats = box_plot_stats(flat);
    CHECK(flat_stats.q3 - flat_stats.q1 == 0.0);
    CHECK(flat_stats.outliers.empty());

    CHECK_THROWS_AS((void)box_plot_stats(std::vector<double>{1.0, 2.0, 3.0}),
                    std::invalid_argument);
}

TEST_CASE("power-of-two fft round-trips and rejects other sizes") {
    const auto x = gaussian_vector(128, 31);
    std::vector<std::complex<double>> data(x.begin(), x.end());
    fft_pow2(data, false);
    fft_pow2(data, true);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(data[i].real() == doctest::Approx(x[i]).epsilon(1e-12));
        CHECK(std::fabs(data[i].imag()) < 1e-12);
    }
    std::vector<std::complex<double>> bad(100);
    CHECK_THROWS_AS(fft_pow2(bad, false), std::invalid_argument);
}

TEST_CASE("dft matches the direct-summation oracle") {
    for (std::size_t n : {4u, 16u, 100u, 257u, 512u}) {
        const auto x = gaussian_vector(n, static_cast<uint32_t>(1000 + n));
        const auto fast = dft(std::span<const double>(x));
        const auto direct = oracle::direct_dft(x);
        REQUIRE(fast.size() == direct.size());
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(fast[k] - direct[k]) <= 1e-9 * (1.0 + std::abs(direct[k])));
        }
    }
}

TEST_CASE("transform preserves energy at awkward lengths") {
    for (std::size_t n : {8u, 12u, 100u, 128u, 257u, 500u, 1021u, 2048u, 3000u, 4096u}) {
        const auto x = gaussian_vector(n, static_cast<uint32_t>(2000 + n));
        double energy = 0.0;
        for (double v : x) energy += v * v;
        const auto spectrum = dft(std::span<const double>(x));
        double spectral_energy = 0.0;
        for (const auto& z : spectrum) spectral_energy += std::norm(z);
        spectral_energy /= static_cast<double>(n);
        CHECK(std::fabs(spectral_energy - energy) <= 1e-9 * energy);
    }
}

TEST_CASE("periodogram concentrates a pure tone in its bin") {
    const std::size_t n = 64;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        x[t] = std::cos(2.0 * M_PI * 5.0 * static_cast<double>(t) / static_cast<double>(n));
    }
    const auto ps = periodogram(x, false);
    REQUIRE(ps.power.size() == n / 2);
    CHECK(ps.frequency.front() == doctest::Approx(1.0 / 64.0));
    CHECK(ps.frequency.back() == doctest::Approx(0.5));
    // Bin k carries |X_k|^2/N = (N/2)^2/N = N/4.
    CHECK(ps.power[4] == doctest::Approx(16.0).epsilon(1e-12));
    for (std::size_t i = 0; i < ps.power.size(); ++i) {
        if (i == 4) continue;
        CHECK(ps.power[i] <= 1e-18 * ps.power[4]);
    }
}

TEST_CASE("periodogram of a constant vanishes once the mean is removed") {
    // With every sample equal, x - mean is exactly zero in floating point,
    // so all bins must be exact zeros, not merely small.
    const std::vector<double> x(64, 1.0);
    const auto ps = periodogram(x, true);
    for (double p : ps.power) CHECK(p == 0.0);
}

TEST_CASE("periodogram matches the oracle on random data") {
    for (std::size_t n : {100u, 257u, 500u}) {
        const auto x = gaussian_vector(n, static_cast<uint32_t>(3000 + n));
        double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
        std::vector<double> centered(n);
        for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - mean;
        const auto direct = oracle::direct_dft(centered);
        const auto ps = periodogram(x, true);
        REQUIRE(ps.power.size() == n / 2);
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double expected = std::norm(direct[k]) / static_cast<double>(n);
            CHECK(std::fabs(ps.power[k - 1] - expected) <= 1e-9 * (1.0 + expected));
        }
    }
}

}  // TEST_SUITE
