#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fracdim {

// splitmix64 finalizer. Used to derive independent stream seeds from a base
// seed plus a handful of labels, so every cell of an experiment grid gets its
// own reproducible stream no matter which worker executes it.
uint64_t mix64(uint64_t x);

// Accumulates labels into a single derived seed. Order matters by design.
class SeedMixer {
public:
    explicit SeedMixer(uint64_t base) : state_(mix64(base ^ 0x9e3779b97f4a7c15ull)) {}

    SeedMixer& add(uint64_t v);
    SeedMixer& add(std::string_view tag);
    // Hashes the exact bit pattern, so 1.5 and 1.5000000000000002 differ.
    SeedMixer& add_double(double v);

    uint64_t finish() const { return state_; }

private:
    uint64_t state_;
};

// mt19937_64 with an explicit Box-Muller transform on top. std::normal_distribution
// is implementation-defined, which would break bit-for-bit reproducibility of
// generated signals across standard libraries; this keeps the byte stream pinned.
class GaussianRng {
public:
    explicit GaussianRng(uint64_t seed) : engine_(seed) {}

    // Uniform on (0,1], never returns 0 so log() stays finite.
    double uniform_open();

    // Standard normal deviate.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace fracdim
