#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracdim/types.hpp"

namespace fracdim {

// Deterministic cosine-sum fractal signal on a uniform grid over one period:
//   W(t) = sum_{n=0}^{n_max} cos(2^n t) / 2^{(2-dimension) n},  t_k = 2*pi*k / num_points
// for k = 1 .. num_points, so the grid ends exactly at 2*pi. The graph of the
// infinite sum has box-counting dimension equal to `dimension`.
struct WeierstrassSpec {
    double dimension = 1.5;       // must lie strictly inside (1, 2)
    std::size_t num_points = 314160;
    int n_max = 1021;
};

// Fractional Brownian motion path of Hurst exponent `hurst`, starting at 0,
// with increment variance `scale` at unit lag. Graph dimension is 2 - hurst.
struct FbmSpec {
    double hurst = 0.5;           // must lie strictly inside (0, 1)
    std::size_t length = 320000;  // number of path samples including the initial 0
    uint64_t seed = 0;
    double scale = 1.0;
};

TimeSeries weierstrass(const WeierstrassSpec& spec);

// Exact-covariance synthesis via circulant embedding of the increment process
// (Davies-Harte). Throws std::runtime_error if the embedding produces a
// genuinely negative eigenvalue instead of silently clipping it.
TimeSeries fbm(const FbmSpec& spec);

// Adds white Gaussian noise scaled so that 10*log10(signal_power/noise_power)
// equals snr_db, with signal power measured from the samples themselves.
// An all-zero input comes back unchanged apart from the recorded snr.
TimeSeries add_white_noise(const TimeSeries& ts, double snr_db, uint64_t seed);

// Keeps every stride-th sample starting from the first one.
TimeSeries downsample(const TimeSeries& ts, std::size_t stride);

// Splits into consecutive non-overlapping chunks of segment_length samples;
// a short tail is dropped. segment_length must be in [2, ts.length()].
std::vector<TimeSeries> segment(const TimeSeries& ts, std::size_t segment_length);

}  // namespace fracdim
