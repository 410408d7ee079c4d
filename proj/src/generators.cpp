#include "fracdim/generators.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "fracdim/numerics.hpp"
#include "fracdim/rng.hpp"
#include "weierstrass_detail.hpp"

namespace fracdim {

namespace detail {

WeierstrassTables weierstrass_tables(const WeierstrassSpec& spec) {
    if (!(spec.dimension > 1.0 && spec.dimension < 2.0)) {
        throw std::invalid_argument("weierstrass dimension must lie strictly inside (1, 2)");
    }
    if (spec.num_points < 2) {
        throw std::invalid_argument("weierstrass needs at least 2 points");
    }
    if (spec.n_max < 0) {
        throw std::invalid_argument("weierstrass n_max must be nonnegative");
    }

    WeierstrassTables t;
    t.num_points = spec.num_points;

    // Terms below 2^-60 in amplitude sit far under the double rounding noise
    // of the partial sum; their combined tail is < 2^-59. Amplitudes are
    // monotone decreasing, so stop at the first one under the cutoff.
    const double decay = 2.0 - spec.dimension;
    uint64_t step = 1 % static_cast<uint64_t>(spec.num_points);
    for (int n = 0; n <= spec.n_max; ++n) {
        const double amp = std::exp2(-decay * static_cast<double>(n));
        if (amp < 0x1.0p-60) break;
        t.amplitude.push_back(amp);
        t.phase_step.push_back(step);
        step = step * 2 % static_cast<uint64_t>(spec.num_points);
    }

    t.cos_table.resize(spec.num_points);
    for (std::size_t j = 0; j < spec.num_points; ++j) {
        t.cos_table[j] =
            std::cos(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(spec.num_points));
    }
    return t;
}

}  // namespace detail

TimeSeries weierstrass(const WeierstrassSpec& spec) {
    const auto tables = detail::weierstrass_tables(spec);

    TimeSeries ts;
    ts.samples.resize(spec.num_points);
    const auto n = static_cast<std::int64_t>(spec.num_points);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        ts.samples[i] = detail::weierstrass_sample(tables, static_cast<std::size_t>(i) + 1);
    }

    ts.meta.kind = GeneratorKind::weierstrass;
    ts.meta.target_dimension = spec.dimension;
    return ts;
}

TimeSeries fbm(const FbmSpec& spec) {
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
        throw std::invalid_argument("fbm hurst exponent must lie strictly inside (0, 1)");
    }
    if (spec.length < 2) throw std::invalid_argument("fbm needs length >= 2");
    if (!(spec.scale > 0.0)) throw std::invalid_argument("fbm scale must be positive");

    const std::size_t n_incr = spec.length - 1;
    const std::size_t m = std::bit_ceil(n_incr);
    const std::size_t big_m = 2 * m;

    // Increment-process autocovariance gamma(j) out to lag m.
    const double two_h = 2.0 * spec.hurst;
    std::vector<double> gamma(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        const double jd = static_cast<double>(j);
        const double prev = (j == 0) ? 1.0 : std::pow(jd - 1.0, two_h);
        gamma[j] = 0.5 * spec.scale * (std::pow(jd + 1.0, two_h) - 2.0 * std::pow(jd, two_h) + prev);
    }

    // First row of the circulant embedding: gamma mirrored around lag m.
    std::vector<std::complex<double>> row(big_m);
    for (std::size_t j = 0; j <= m; ++j) row[j] = gamma[j];
    for (std::size_t j = 1; j < m; ++j) row[big_m - j] = gamma[j];

    auto eigen = dft(row);
    double lambda_max = 0.0;
    for (const auto& z : eigen) lambda_max = std::max(lambda_max, z.real());
    std::vector<double> lambda(big_m);
    for (std::size_t k = 0; k < big_m; ++k) {
        double v = eigen[k].real();
        if (v < -1e-9 * lambda_max) {
            throw std::runtime_error("fbm circulant embedding produced a negative eigenvalue");
        }
        // Anything in [-1e-9*max, 0) is a true zero eigenvalue seen through
        // FFT roundoff, not a covariance violation.
        lambda[k] = std::max(v, 0.0);
    }

    GaussianRng rng(spec.seed);
    std::vector<std::complex<double>> y(big_m);
    const double inv_m = 1.0 / static_cast<double>(big_m);
    y[0] = std::sqrt(lambda[0] * inv_m) * rng.normal();
    for (std::size_t k = 1; k < m; ++k) {
        const double a = rng.normal();
        const double b = rng.normal();
        const double s = std::sqrt(0.5 * lambda[k] * inv_m);
        y[k] = {s * a, s * b};
        y[big_m - k] = std::conj(y[k]);
    }
    y[m] = std::sqrt(lambda[m] * inv_m) * rng.normal();

    const auto z = dft(y);

    TimeSeries ts;
    ts.samples.resize(spec.length);
    ts.samples[0] = 0.0;
    for (std::size_t i = 0; i < n_incr; ++i) {
        ts.samples[i + 1] = ts.samples[i] + z[i].real();
    }

    ts.meta.kind = GeneratorKind::fbm;
    ts.meta.target_dimension = 2.0 - spec.hurst;
    ts.meta.seed = spec.seed;
    return ts;
}

TimeSeries add_white_noise(const TimeSeries& ts, double snr_db, uint64_t seed) {
    if (ts.length() == 0) throw std::invalid_argument("add_white_noise on empty series");

    double power = 0.0;
    for (double v : ts.samples) power += v * v;
    power /= static_cast<double>(ts.length());

    TimeSeries out = ts;
    out.meta.snr_db = snr_db;
    if (power == 0.0) return out;  // nothing to scale the noise against

    const double sd = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
    GaussianRng rng(seed);
    for (double& v : out.samples) v += sd * rng.normal();
    return out;
}

TimeSeries downsample(const TimeSeries& ts, std::size_t stride) {
    if (stride < 1) throw std::invalid_argument("downsample stride must be >= 1");
    if (ts.length() == 0) throw std::invalid_argument("downsample on empty series");
    if (stride == 1) return ts;

    TimeSeries out;
    out.samples.reserve((ts.length() - 1) / stride + 1);
    for (std::size_t i = 0; i < ts.length(); i += stride) {
        out.samples.push_back(ts.samples[i]);
    }
    out.meta = ts.meta;
    out.meta.stride *= stride;
    return out;
}

std::vector<TimeSeries> segment(const TimeSeries& ts, std::size_t segment_length) {
    if (segment_length < 2 || segment_length > ts.length()) {
        throw std::invalid_argument("segment length must lie in [2, series length]");
    }
    const std::size_t count = ts.length() / segment_length;
    std::vector<TimeSeries> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        TimeSeries piece;
        const auto begin = ts.samples.begin() + static_cast<std::ptrdiff_t>(s * segment_length);
        piece.samples.assign(begin, begin + static_cast<std::ptrdiff_t>(segment_length));
        piece.meta = ts.meta;
        piece.meta.segment_index = s;
        out.push_back(std::move(piece));
    }
    return out;
}

}  // namespace fracdim
