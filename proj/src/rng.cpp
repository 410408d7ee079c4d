#include "fracdim/rng.hpp"

#include <bit>
#include <cmath>

namespace fracdim {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

SeedMixer& SeedMixer::add(uint64_t v) {
    state_ = mix64(state_ ^ v);
    return *this;
}

SeedMixer& SeedMixer::add(std::string_view tag) {
    // FNV-1a over the bytes, then folded into the running state.
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return add(h);
}

SeedMixer& SeedMixer::add_double(double v) {
    return add(std::bit_cast<uint64_t>(v));
}

double GaussianRng::uniform_open() {
    // Top 53 bits give a uniform multiple of 2^-53 in [0, 1); shifting the
    // lattice by one step maps it to (0, 1].
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace fracdim
