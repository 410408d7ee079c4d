#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracdim {

// Ordinary least squares fit y = slope * x + intercept.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

// One-sided raw periodogram. frequency[i] is in cycles per sample, power[i]
// holds |X_k|^2 / N so that the sum over all bins (counting the symmetric
// negative half) equals the energy sum(x^2) of the mean-removed input.
struct PowerSpectrum {
    std::vector<double> frequency;
    std::vector<double> power;
};

// Five-number summary plus Tukey outliers (outside 1.5 * IQR from the
// quartiles). min / max are the full data extremes, outliers included.
struct BoxPlotStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<double> outliers;
};

// In-place iterative radix-2 transform; size must be a power of two.
// inverse=true applies the conjugate transform including the 1/N factor.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse);

// Forward DFT of arbitrary length. Power-of-two sizes go straight to the
// radix-2 kernel, everything else through Bluestein's chirp-z reduction, so
// awkward lengths like 314160 or 500 cost O(N log N) rather than O(N^2).
std::vector<std::complex<double>> dft(std::span<const double> x);
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

// Periodogram over positive frequencies k/N for k = 1 .. floor(N/2).
// remove_mean subtracts the sample mean first (the DC bin is dropped either way).
PowerSpectrum periodogram(std::span<const double> x, bool remove_mean = true);

// Least squares line through (x[i], y[i]). Throws std::invalid_argument on
// size mismatch, fewer than 2 points, or all x equal. r_squared is defined
// as 1 when the y values are constant (SS_tot == 0).
FitResult linear_least_squares(std::span<const double> x, std::span<const double> y);

// Median with the usual mean-of-two-middle rule for even counts.
double median(std::span<const double> values);

// Linear-interpolation quantile (the "type 7" rule: h = (n-1)p) on a sorted
// copy of the data. p must lie in [0,1].
double quantile(std::span<const double> values, double p);

// Requires at least 4 values. Quartiles follow quantile() above.
BoxPlotStats box_plot_stats(std::span<const double> values);

}  // namespace fracdim
