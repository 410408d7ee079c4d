#include "fracdim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracdim {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Forward-sign twiddles w[j] = exp(-2*pi*i*j/n) for j < n/2, shared across
// stages (stage of length `len` strides the table by n/len).
std::vector<std::complex<double>> twiddle_table(std::size_t n) {
    std::vector<std::complex<double>> w(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        w[j] = std::polar(1.0, -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
    }
    return w;
}

void fft_core(std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& w,
              bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> tw = w[j * step];
                if (inverse) tw = std::conj(tw);
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv_n;
    }
}

// exp(i*pi*n^2/N) with the quadratic phase reduced mod 2N in integer
// arithmetic; n^2 in floating point would lose the low phase bits long
// before n reaches the lengths used here.
std::complex<double> chirp(std::size_t n, std::size_t big_n) {
    const auto sq = static_cast<unsigned __int128>(n) * n;
    const auto reduced = static_cast<std::size_t>(sq % (2 * static_cast<unsigned __int128>(big_n)));
    return std::polar(1.0, M_PI * static_cast<double>(reduced) / static_cast<double>(big_n));
}

std::vector<std::complex<double>> bluestein(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // a[k] = x[k] * conj(chirp(k)), zero padded; b is the chirp kernel laid
    // out circularly so the linear convolution lands in the first n slots.
    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> c = chirp(k, n);
        a[k] = x[k] * std::conj(c);
        b[k] = c;
        if (k != 0) b[m - k] = c;
    }

    const auto w = twiddle_table(m);
    fft_core(a, w, false);
    fft_core(b, w, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_core(a, w, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * std::conj(chirp(k, n));
    return out;
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& data, bool inverse) {
    if (!is_pow2(data.size())) {
        throw std::invalid_argument("fft_pow2 requires a power-of-two size");
    }
    if (data.size() < 2) return;
    const auto w = twiddle_table(data.size());
    fft_core(data, w, inverse);
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    if (x.empty()) throw std::invalid_argument("dft of empty input");
    if (x.size() == 1) return x;
    if (is_pow2(x.size())) {
        auto copy = x;
        fft_pow2(copy, false);
        return copy;
    }
    return bluestein(x);
}

std::vector<std::complex<double>> dft(std::span<const double> x) {
    std::vector<std::complex<double>> cx(x.begin(), x.end());
    return dft(cx);
}

PowerSpectrum periodogram(std::span<const double> x, bool remove_mean) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("periodogram needs at least 2 samples");

    std::vector<std::complex<double>> cx(n);
    if (remove_mean) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) cx[i] = x[i] - mean;
    } else {
        for (std::size_t i = 0; i < n; ++i) cx[i] = x[i];
    }

    const auto spectrum = dft(cx);
    const std::size_t half = n / 2;
    PowerSpectrum ps;
    ps.frequency.resize(half);
    ps.power.resize(half);
    for (std::size_t k = 1; k <= half; ++k) {
        ps.frequency[k - 1] = static_cast<double>(k) / static_cast<double>(n);
        ps.power[k - 1] = std::norm(spectrum[k]) / static_cast<double>(n);
    }
    return ps;
}

FitResult linear_least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("linear_least_squares size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("linear_least_squares needs at least 2 points");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_least_squares: all x values identical");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.n_points = n;

    // Residuals recomputed directly; syy - slope*sxy cancels badly when the
    // fit is nearly exact.
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = (syy == 0.0) ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty range");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of empty range");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile probability outside [0,1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BoxPlotStats box_plot_stats(std::span<const double> values) {
    if (values.size() < 4) throw std::invalid_argument("box_plot_stats needs at least 4 values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    BoxPlotStats stats;
    stats.min = sorted.front();
    stats.max = sorted.back();
    stats.q1 = quantile(sorted, 0.25);
    stats.median = quantile(sorted, 0.5);
    stats.q3 = quantile(sorted, 0.75);

    const double iqr = stats.q3 - stats.q1;
    const double lo_fence = stats.q1 - 1.5 * iqr;
    const double hi_fence = stats.q3 + 1.5 * iqr;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) stats.outliers.push_back(v);
    }
    return stats;
}

}  // namespace fracdim
