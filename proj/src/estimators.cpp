#include "fracdim/estimators.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "estimators_detail.hpp"

namespace fracdim {

namespace detail {

void validate_series(const TimeSeries& ts, std::size_t min_length, const char* method) {
    for (double v : ts.samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(method) + ": series contains a non-finite sample");
        }
    }
    if (ts.length() < min_length) {
        throw DegenerateInput(std::string(method) + ": series of " + std::to_string(ts.length()) +
                              " samples is too short (needs " + std::to_string(min_length) + ")");
    }
}

void validate_higuchi_config(const HiguchiConfig& cfg) {
    if (cfg.k_max < 2) throw std::invalid_argument("higuchi k_max must be at least 2");
}

void validate_ghe_config(const GheConfig& cfg) {
    if (cfg.tau_max < 2) throw std::invalid_argument("ghe tau_max must be at least 2");
    if (!(cfg.q > 0.0)) throw std::invalid_argument("ghe moment order q must be positive");
}

void validate_dfa_config(const DfaConfig& cfg) {
    if (cfg.l_min < 2) throw std::invalid_argument("dfa l_min must be at least 2");
    if (cfg.l_max_divisor < 2) throw std::invalid_argument("dfa l_max_divisor must be at least 2");
    if (cfg.num_sizes < 2) throw std::invalid_argument("dfa num_sizes must be at least 2");
}

double higuchi_curve_length(const std::vector<double>& x, std::size_t k) {
    const std::size_t n = x.size();
    double mean_over_offsets = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
        const std::size_t steps = (n - m) / k;
        double length = 0.0;
        for (std::size_t i = 1; i <= steps; ++i) {
            length += std::fabs(x[m - 1 + i * k] - x[m - 1 + (i - 1) * k]);
        }
        // Normalization maps the subsampled length back to the full series:
        // (n-1)/(steps*k) corrects for the reduced point count, /k for the lag.
        length *= static_cast<double>(n - 1) /
                  (static_cast<double>(steps) * static_cast<double>(k) * static_cast<double>(k));
        mean_over_offsets += length;
    }
    return mean_over_offsets / static_cast<double>(k);
}

EstimateResult higuchi_from_lengths(const std::vector<double>& lengths, const HiguchiConfig& cfg,
                                    std::size_t n) {
    std::vector<double> log_k(lengths.size()), log_l(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0.0)) {
            throw DegenerateInput("higuchi: zero curve length (constant or repeating series)");
        }
        log_k[i] = std::log(static_cast<double>(i + 1));
        log_l[i] = std::log(lengths[i]);
    }

    EstimateResult result;
    result.method = Method::higuchi;
    result.fit = linear_least_squares(log_k, log_l);
    result.dimension = -result.fit.slope;
    result.raw_exponent = result.dimension;
    result.flags.short_input = n < 10 * static_cast<std::size_t>(cfg.k_max);
    apply_range_flag(result);
    return result;
}

double ghe_increment_moment(const std::vector<double>& x, std::size_t tau, double q) {
    const std::size_t n = x.size();
    double sum = 0.0;
    if (q == 1.0) {
        for (std::size_t t = 0; t + tau < n; ++t) sum += std::fabs(x[t + tau] - x[t]);
    } else if (q == 2.0) {
        for (std::size_t t = 0; t + tau < n; ++t) {
            const double d = x[t + tau] - x[t];
            sum += d * d;
        }
    } else {
        for (std::size_t t = 0; t + tau < n; ++t) sum += std::pow(std::fabs(x[t + tau] - x[t]), q);
    }
    return sum / static_cast<double>(n - tau);
}

double ghe_sample_moment(const std::vector<double>& x, double q) {
    double sum = 0.0;
    if (q == 1.0) {
        for (double v : x) sum += std::fabs(v);
    } else if (q == 2.0) {
        for (double v : x) sum += v * v;
    } else {
        for (double v : x) sum += std::pow(std::fabs(v), q);
    }
    return sum / static_cast<double>(x.size());
}

EstimateResult ghe_from_moments(const std::vector<double>& moments, double sample_moment,
                                const GheConfig& cfg, std::size_t n) {
    std::vector<double> log_tau(moments.size()), log_kq(moments.size());
    for (std::size_t i = 0; i < moments.size(); ++i) {
        if (!(moments[i] > 0.0)) {
            throw DegenerateInput("ghe: zero structure function (constant series)");
        }
        log_tau[i] = std::log(static_cast<double>(i + 1));
        log_kq[i] = std::log(moments[i] / sample_moment);
    }

    EstimateResult result;
    result.method = Method::ghe;
    result.fit = linear_least_squares(log_tau, log_kq);
    result.raw_exponent = result.fit.slope / cfg.q;  // Hurst exponent
    result.dimension = dimension_from_hurst(result.raw_exponent);
    result.flags.short_input = n < 10 * static_cast<std::size_t>(cfg.tau_max);
    apply_range_flag(result);
    return result;
}

std::vector<std::size_t> dfa_box_sizes(std::size_t n, const DfaConfig& cfg) {
    const std::size_t max_box = n / cfg.l_max_divisor;
    if (max_box < cfg.l_min) {
        throw DegenerateInput("dfa: series too short for the requested box range");
    }
    // Log-spaced targets, rounded to integers and deduplicated. Small series
    // collapse many targets onto the same integer; that is fine as long as
    // at least two distinct sizes survive.
    const double log_lo = std::log(static_cast<double>(cfg.l_min));
    const double log_hi = std::log(static_cast<double>(max_box));
    std::vector<std::size_t> sizes;
    for (int i = 0; i < cfg.num_sizes; ++i) {
        const double f = (cfg.num_sizes == 1)
                             ? 0.0
                             : static_cast<double>(i) / static_cast<double>(cfg.num_sizes - 1);
        const auto box = static_cast<std::size_t>(std::lround(std::exp(log_lo + f * (log_hi - log_lo))));
        if (box < cfg.l_min || box > max_box) continue;
        if (sizes.empty() || sizes.back() != box) sizes.push_back(box);
    }
    if (sizes.size() < 2) {
        throw DegenerateInput("dfa: fewer than 2 distinct box sizes available");
    }
    return sizes;
}

std::vector<double> dfa_profile(const std::vector<double>& x) {
    // The leading zero matters: it makes the N+1 profile points map onto
    // themselves under time reversal (up to an affine value change), so the
    // two anchoring passes together are exactly reversal invariant.
    std::vector<double> profile(x.size() + 1);
    profile[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i];
        profile[i + 1] = acc;
    }
    return profile;
}

double dfa_fluctuation(const std::vector<double>& profile, std::size_t box) {
    const std::size_t n = profile.size();
    const std::size_t n_boxes = (n - 1) / box;  // floor(series length / box)
    const double box_d = static_cast<double>(box);
    const double mean_t = 0.5 * (box_d - 1.0);
    // Sum over t of (t - mean_t)^2 for t = 0 .. box-1, in closed form.
    const double var_t = box_d * (box_d * box_d - 1.0) / 12.0;

    double total_ss = 0.0;
    for (int backward = 0; backward < 2; ++backward) {
        for (std::size_t b = 0; b < n_boxes; ++b) {
            const std::size_t start = backward ? n - (b + 1) * box : b * box;
            double sum_y = 0.0, sum_ty = 0.0;
            for (std::size_t t = 0; t < box; ++t) {
                const double y = profile[start + t];
                sum_y += y;
                sum_ty += static_cast<double>(t) * y;
            }
            const double slope = (sum_ty - mean_t * sum_y) / var_t;
            const double intercept = sum_y / box_d - slope * mean_t;
            double ss = 0.0;
            for (std::size_t t = 0; t < box; ++t) {
                const double r = profile[start + t] - (intercept + slope * static_cast<double>(t));
                ss += r * r;
            }
            total_ss += ss;
        }
    }
    return std::sqrt(total_ss / (2.0 * static_cast<double>(n_boxes) * box_d));
}

EstimateResult dfa_from_fluctuations(const std::vector<std::size_t>& sizes,
                                     const std::vector<double>& fluctuations) {
    std::vector<double> log_l(sizes.size()), log_f(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(fluctuations[i] > 0.0)) {
            throw DegenerateInput("dfa: zero fluctuation (constant series)");
        }
        log_l[i] = std::log(static_cast<double>(sizes[i]));
        log_f[i] = std::log(fluctuations[i]);
    }

    EstimateResult result;
    result.method = Method::dfa;
    result.fit = linear_least_squares(log_l, log_f);
    result.raw_exponent = result.fit.slope;  // fluctuation exponent delta
    bool ambiguous = false;
    const double hurst = hurst_from_dfa_delta(result.raw_exponent, ambiguous);
    result.dimension = dimension_from_hurst(hurst);
    result.flags.delta_ambiguous = ambiguous;
    result.flags.short_input = sizes.size() < 8;
    apply_range_flag(result);
    return result;
}

void apply_range_flag(EstimateResult& result) {
    result.flags.out_of_range = result.dimension < 1.0 || result.dimension > 2.0;
}

}  // namespace detail

const char* to_string(Method m) {
    switch (m) {
        case Method::higuchi: return "higuchi";
        case Method::ghe: return "ghe";
        case Method::dfa: return "dfa";
        case Method::spectral: return "spectral";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    if (name == "higuchi") return Method::higuchi;
    if (name == "ghe") return Method::ghe;
    if (name == "dfa") return Method::dfa;
    if (name == "spectral") return Method::spectral;
    throw std::invalid_argument("unknown method: " + name);
}

double dimension_from_hurst(double hurst) { return 2.0 - hurst; }

double dimension_from_beta(double beta) { return 0.5 * (5.0 - beta); }

double hurst_from_dfa_delta(double delta, bool& ambiguous) {
    ambiguous = std::fabs(delta - 1.0) < 0.02;
    if (ambiguous || delta < 1.0) return delta;
    return delta - 1.0;
}

EstimateResult higuchi(const TimeSeries& ts, const HiguchiConfig& cfg) {
    detail::validate_higuchi_config(cfg);
    detail::validate_series(ts, 2 * static_cast<std::size_t>(cfg.k_max), "higuchi");

    std::vector<double> lengths(cfg.k_max);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 1; k <= cfg.k_max; ++k) {
        lengths[k - 1] = detail::higuchi_curve_length(ts.samples, static_cast<std::size_t>(k));
    }
    return detail::higuchi_from_lengths(lengths, cfg, ts.length());
}

EstimateResult ghe(const TimeSeries& ts, const GheConfig& cfg) {
    detail::validate_ghe_config(cfg);
    detail::validate_series(ts, static_cast<std::size_t>(cfg.tau_max) + 1, "ghe");

    const double sample_moment = detail::ghe_sample_moment(ts.samples, cfg.q);
    if (!(sample_moment > 0.0)) {
        throw DegenerateInput("ghe: all-zero series has no moment scale");
    }

    std::vector<double> moments(cfg.tau_max);
#pragma omp parallel for schedule(static)
    for (std::int64_t tau = 1; tau <= cfg.tau_max; ++tau) {
        moments[tau - 1] = detail::ghe_increment_moment(ts.samples, static_cast<std::size_t>(tau), cfg.q);
    }
    return detail::ghe_from_moments(moments, sample_moment, cfg, ts.length());
}

EstimateResult dfa(const TimeSeries& ts, const DfaConfig& cfg) {
    detail::validate_dfa_config(cfg);
    detail::validate_series(ts, cfg.l_min * cfg.l_max_divisor, "dfa");

    const auto sizes = detail::dfa_box_sizes(ts.length(), cfg);
    const auto profile = detail::dfa_profile(ts.samples);

    std::vector<double> fluctuations(sizes.size());
    const auto n_sizes = static_cast<std::int64_t>(sizes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n_sizes; ++i) {
        fluctuations[i] = detail::dfa_fluctuation(profile, sizes[i]);
    }
    return detail::dfa_from_fluctuations(sizes, fluctuations);
}

EstimateResult spectral(const TimeSeries& ts, const SpectralConfig& cfg) {
    if (cfg.freq_range) {
        const auto [lo, hi] = *cfg.freq_range;
        if (!(lo > 0.0) || !(hi > lo) || hi > 0.5) {
            throw std::invalid_argument("spectral freq_range must satisfy 0 < low < high <= 0.5");
        }
    }
    detail::validate_series(ts, 16, "spectral");

    const auto ps = periodogram(ts.samples, cfg.detrend_mean);
    std::vector<double> log_f, log_p;
    log_f.reserve(ps.frequency.size());
    log_p.reserve(ps.frequency.size());
    for (std::size_t i = 0; i < ps.frequency.size(); ++i) {
        if (cfg.freq_range &&
            (ps.frequency[i] < cfg.freq_range->first || ps.frequency[i] > cfg.freq_range->second)) {
            continue;
        }
        if (!(ps.power[i] > 0.0)) continue;  // exact zeros carry no slope information
        log_f.push_back(std::log(ps.frequency[i]));
        log_p.push_back(std::log(ps.power[i]));
    }
    if (log_f.size() < 4) {
        throw DegenerateInput("spectral: fewer than 4 usable spectrum bins");
    }

    EstimateResult result;
    result.method = Method::spectral;
    result.fit = linear_least_squares(log_f, log_p);
    result.raw_exponent = -result.fit.slope;  // spectral decay beta
    result.dimension = dimension_from_beta(result.raw_exponent);
    result.flags.short_input = log_f.size() < 16;
    detail::apply_range_flag(result);
    return result;
}

EstimateResult run_method(const TimeSeries& ts, Method m, const EstimatorSettings& settings) {
    switch (m) {
        case Method::higuchi: return higuchi(ts, settings.higuchi);
        case Method::ghe: return ghe(ts, settings.ghe);
        case Method::dfa: return dfa(ts, settings.dfa);
        case Method::spectral: return spectral(ts, settings.spectral);
    }
    throw std::invalid_argument("run_method: unknown method");
}

}  // namespace fracdim
