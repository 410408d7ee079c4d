#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdim {

// Thrown when a signal is unusable for a given estimator (constant segment,
// all-zero power, too few samples for the requested scale range). The batch
// harness catches this per segment and counts the failure; anything else
// propagates.
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GeneratorKind {
    weierstrass,
    fbm,
    external,
};

const char* to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

// Where a series came from and what has been done to it since. Carried along
// by every transform so the experiment harness can label its output rows.
struct Provenance {
    GeneratorKind kind = GeneratorKind::external;
    // Nominal fractal dimension of the generating process, if known.
    std::optional<double> target_dimension;
    uint64_t seed = 0;
    // Combined decimation factor relative to the originally generated grid.
    std::size_t stride = 1;
    // Realized signal-to-noise ratio in dB; unset means the series is clean.
    std::optional<double> snr_db;
    // Position of this chunk when the series was split, unset for whole series.
    std::optional<std::size_t> segment_index;
};

// A uniformly sampled real-valued signal. Transforms return new instances
// rather than mutating in place, so a series handed to an estimator is stable
// for the duration of the call.
struct TimeSeries {
    std::vector<double> samples;
    Provenance meta;

    std::size_t length() const { return samples.size(); }
};

}  // namespace fracdim
