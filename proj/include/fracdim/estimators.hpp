#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fracdim/numerics.hpp"
#include "fracdim/types.hpp"

namespace fracdim {

enum class Method {
    higuchi,
    ghe,
    dfa,
    spectral,
};

const char* to_string(Method m);
Method method_from_string(const std::string& name);

struct HiguchiConfig {
    int k_max = 15;  // largest curve-length lag; needs at least 2*k_max samples
};

struct GheConfig {
    double q = 1.0;   // moment order of the structure function, q > 0
    int tau_max = 25; // largest increment lag; needs more than tau_max samples
};

struct DfaConfig {
    std::size_t l_min = 4;            // smallest box length in samples
    std::size_t l_max_divisor = 4;    // largest box is length / this
    int num_sizes = 20;               // log-spaced targets before deduplication
};

struct SpectralConfig {
    // Optional [low, high] band in cycles per sample; unset fits every
    // positive frequency up to Nyquist.
    std::optional<std::pair<double, double>> freq_range;
    bool detrend_mean = true;  // subtract the sample mean before transforming
};

struct EstimateFlags {
    bool out_of_range = false;     // dimension landed outside [1, 2]
    bool delta_ambiguous = false;  // DFA exponent within 0.02 of the branch point 1
    bool short_input = false;      // series much shorter than the scale range wants
};

struct EstimateResult {
    Method method = Method::higuchi;
    double dimension = 0.0;
    // The exponent actually fitted before conversion: Higuchi reports the
    // dimension itself, ghe the Hurst exponent, dfa its fluctuation exponent
    // delta, spectral the power-law decay beta.
    double raw_exponent = 0.0;
    FitResult fit;
    EstimateFlags flags;
};

// dimension = 2 - hurst for self-affine graphs.
double dimension_from_hurst(double hurst);

// dimension = (5 - beta) / 2 from the spectral decay exponent.
double dimension_from_beta(double beta);

// DFA exponent to Hurst: delta below 1 reads as a stationary-signal exponent
// (H = delta), above 1 as an integrated-signal exponent (H = delta - 1).
// Within 0.02 of 1 the two branches are indistinguishable; the stationary
// branch is used and ambiguous is set.
double hurst_from_dfa_delta(double delta, bool& ambiguous);

// Curve-length scaling estimate. Builds coarse-grained curve lengths L(k) for
// k = 1 .. k_max and fits log L(k) against log k; the dimension is minus the
// slope. Throws DegenerateInput when the series is constant or shorter than
// 2*k_max samples.
EstimateResult higuchi(const TimeSeries& ts, const HiguchiConfig& cfg = {});

// q-order structure function estimate. K_q(tau), the mean q-th absolute
// increment moment normalized by the mean q-th absolute sample moment, is
// fitted on log-log axes over tau = 1 .. tau_max; Hurst is slope / q.
EstimateResult ghe(const TimeSeries& ts, const GheConfig& cfg = {});

// Detrended fluctuation analysis on the cumulative sum, fitting fluctuation
// F(l) against box length l on log-log axes over ~num_sizes log-spaced box
// lengths in [l_min, length / l_max_divisor]. Boxes are anchored from both
// ends of the series and the residual variances averaged, which makes the
// result invariant under time reversal.
EstimateResult dfa(const TimeSeries& ts, const DfaConfig& cfg = {});

// Power spectral decay estimate. Fits log power against log frequency over
// the raw periodogram (no windowing or band averaging) and converts the decay
// exponent beta = -slope. Exact-zero bins are excluded from the fit; fewer
// than 4 usable bins is degenerate.
EstimateResult spectral(const TimeSeries& ts, const SpectralConfig& cfg = {});

// All method configs in one bundle for batch runs.
struct EstimatorSettings {
    HiguchiConfig higuchi;
    GheConfig ghe;
    DfaConfig dfa;
    SpectralConfig spectral;
};

EstimateResult run_method(const TimeSeries& ts, Method m, const EstimatorSettings& settings);

}  // namespace fracdim
