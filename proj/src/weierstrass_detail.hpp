#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracdim/generators.hpp"

namespace fracdim::detail {

// Precomputed state for evaluating the cosine sum on the k/num_points grid.
// Because every term frequency is a power of two and the grid is uniform over
// one period, the phase of term n at sample k is 2*pi*((2^n * k) mod N)/N.
// Keeping 2^n mod N and a cosine table over the N grid phases makes each
// sample an exact table walk with integer arithmetic, no accumulated phase
// drift at n ~ 1000 where 2^n dwarfs double precision.
struct WeierstrassTables {
    std::vector<double> amplitude;     // 2^{-(2-D) n} for kept terms
    std::vector<uint64_t> phase_step;  // 2^n mod N for the same terms
    std::vector<double> cos_table;     // cos(2*pi*j/N), j = 0 .. N-1
    std::size_t num_points = 0;
};

WeierstrassTables weierstrass_tables(const WeierstrassSpec& spec);

// Sample at grid index k (1-based, k = num_points lands on t = 2*pi).
inline double weierstrass_sample(const WeierstrassTables& t, std::size_t k) {
    const auto n = static_cast<unsigned __int128>(t.num_points);
    double sum = 0.0;
    for (std::size_t i = 0; i < t.amplitude.size(); ++i) {
        const auto phase_idx =
            static_cast<std::size_t>(static_cast<unsigned __int128>(t.phase_step[i]) * k % n);
        sum += t.amplitude[i] * t.cos_table[phase_idx];
    }
    return sum;
}

}  // namespace fracdim::detail
