#include "fracdim/reference.hpp"

#include <vector>

#include "estimators_detail.hpp"
#include "weierstrass_detail.hpp"

namespace fracdim::reference {

TimeSeries weierstrass(const WeierstrassSpec& spec) {
    const auto tables = detail::weierstrass_tables(spec);

    TimeSeries ts;
    ts.samples.resize(spec.num_points);
    for (std::size_t i = 0; i < spec.num_points; ++i) {
        ts.samples[i] = detail::weierstrass_sample(tables, i + 1);
    }
    ts.meta.kind = GeneratorKind::weierstrass;
    ts.meta.target_dimension = spec.dimension;
    return ts;
}

EstimateResult higuchi(const TimeSeries& ts, const HiguchiConfig& cfg) {
    detail::validate_higuchi_config(cfg);
    detail::validate_series(ts, 2 * static_cast<std::size_t>(cfg.k_max), "higuchi");

    std::vector<double> lengths(cfg.k_max);
    for (int k = 1; k <= cfg.k_max; ++k) {
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
    for (int tau = 1; tau <= cfg.tau_max; ++tau) {
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
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        fluctuations[i] = detail::dfa_fluctuation(profile, sizes[i]);
    }
    return detail::dfa_from_fluctuations(sizes, fluctuations);
}

}  // namespace fracdim::reference
