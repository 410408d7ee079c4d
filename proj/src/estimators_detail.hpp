#pragma once

#include <cstddef>
#include <vector>

#include "fracdim/estimators.hpp"
#include "fracdim/types.hpp"

// Per-scale kernels and fit finishers shared by the OpenMP estimators and
// their serial reference twins. Each scale value (one k, tau or box size) is
// computed by exactly the same code in both, so outputs must match bit for
// bit regardless of thread count.
namespace fracdim::detail {

// Throws std::invalid_argument on non-finite samples, DegenerateInput when
// the series has fewer than min_length samples.
void validate_series(const TimeSeries& ts, std::size_t min_length, const char* method);

void validate_higuchi_config(const HiguchiConfig& cfg);
void validate_ghe_config(const GheConfig& cfg);
void validate_dfa_config(const DfaConfig& cfg);

// Mean coarse-grained curve length L(k) over the k possible phase offsets.
double higuchi_curve_length(const std::vector<double>& x, std::size_t k);
EstimateResult higuchi_from_lengths(const std::vector<double>& lengths, const HiguchiConfig& cfg,
                                    std::size_t n);

// Mean q-th absolute moment of increments at lag tau (structure function
// numerator; the caller divides by the sample moment).
double ghe_increment_moment(const std::vector<double>& x, std::size_t tau, double q);
double ghe_sample_moment(const std::vector<double>& x, double q);
EstimateResult ghe_from_moments(const std::vector<double>& moments, double sample_moment,
                                const GheConfig& cfg, std::size_t n);

std::vector<std::size_t> dfa_box_sizes(std::size_t n, const DfaConfig& cfg);
std::vector<double> dfa_profile(const std::vector<double>& x);
// Root mean square residual of per-box linear detrending at one box size,
// boxes anchored from the front and the back of the profile.
double dfa_fluctuation(const std::vector<double>& profile, std::size_t box);
EstimateResult dfa_from_fluctuations(const std::vector<std::size_t>& sizes,
                                     const std::vector<double>& fluctuations);

void apply_range_flag(EstimateResult& result);

}  // namespace fracdim::detail
