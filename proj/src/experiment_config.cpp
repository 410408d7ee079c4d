#include <fstream>
#include <stdexcept>
#include <string>

#include "fracdim/harness.hpp"
#include "json.hpp"

namespace fracdim {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
    throw std::invalid_argument("experiment config: " + what);
}

GeneratorSpec parse_generator(const json& j) {
    if (!j.is_object() || !j.contains("kind")) config_error("each generator needs a \"kind\"");
    GeneratorSpec gen;
    gen.kind = generator_kind_from_string(j.at("kind").get<std::string>());
    if (gen.kind == GeneratorKind::external) config_error("external series cannot be generated");

    if (gen.kind == GeneratorKind::fbm && j.contains("hurst")) {
        gen.target_dimension = 2.0 - j.at("hurst").get<double>();
    } else if (j.contains("dimension")) {
        gen.target_dimension = j.at("dimension").get<double>();
    } else {
        config_error("generator needs \"dimension\" (or \"hurst\" for fbm)");
    }

    if (j.contains("num_points")) {
        gen.num_points = j.at("num_points").get<std::size_t>();
    } else if (j.contains("length")) {
        gen.num_points = j.at("length").get<std::size_t>();
    } else {
        gen.num_points = (gen.kind == GeneratorKind::weierstrass) ? 314160 : 320000;
    }
    if (j.contains("n_max")) gen.n_max = j.at("n_max").get<int>();
    if (j.contains("scale")) gen.scale = j.at("scale").get<double>();
    return gen;
}

}  // namespace

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);

    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        config_error(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) config_error("top level must be an object");

    ExperimentSpec spec;
    if (!j.contains("generators") || !j.at("generators").is_array() || j.at("generators").empty()) {
        config_error("\"generators\" must be a nonempty array");
    }
    for (const auto& g : j.at("generators")) spec.generators.push_back(parse_generator(g));

    if (j.contains("lengths")) {
        spec.segment_lengths.clear();
        for (const auto& v : j.at("lengths")) {
            if (v.is_string() && v.get<std::string>() == "full") {
                spec.segment_lengths.push_back(std::nullopt);
            } else if (v.is_number_unsigned() || v.is_number_integer()) {
                spec.segment_lengths.push_back(v.get<std::size_t>());
            } else {
                config_error("\"lengths\" entries must be integers or \"full\"");
            }
        }
    }
    if (j.contains("strides")) {
        spec.strides = j.at("strides").get<std::vector<std::size_t>>();
    }
    if (j.contains("snr_db_levels")) {
        spec.snr_levels_db.clear();
        for (const auto& v : j.at("snr_db_levels")) {
            if (v.is_null()) {
                spec.snr_levels_db.push_back(std::nullopt);
            } else if (v.is_number()) {
                spec.snr_levels_db.push_back(v.get<double>());
            } else {
                config_error("\"snr_db_levels\" entries must be numbers or null");
            }
        }
    }
    if (j.contains("methods")) {
        spec.methods.clear();
        for (const auto& v : j.at("methods")) {
            spec.methods.push_back(method_from_string(v.get<std::string>()));
        }
    }
    if (j.contains("seeds")) {
        const auto& seeds = j.at("seeds");
        if (seeds.contains("base")) spec.base_seed = seeds.at("base").get<uint64_t>();
        if (seeds.contains("replicates")) spec.replicates = seeds.at("replicates").get<int>();
    }
    if (j.contains("estimators")) {
        const auto& est = j.at("estimators");
        if (est.contains("higuchi")) {
            const auto& h = est.at("higuchi");
            if (h.contains("k_max")) spec.estimators.higuchi.k_max = h.at("k_max").get<int>();
        }
        if (est.contains("ghe")) {
            const auto& g = est.at("ghe");
            if (g.contains("q")) spec.estimators.ghe.q = g.at("q").get<double>();
            if (g.contains("tau_max")) spec.estimators.ghe.tau_max = g.at("tau_max").get<int>();
        }
        if (est.contains("dfa")) {
            const auto& d = est.at("dfa");
            if (d.contains("l_min")) spec.estimators.dfa.l_min = d.at("l_min").get<std::size_t>();
            if (d.contains("l_max_divisor")) {
                spec.estimators.dfa.l_max_divisor = d.at("l_max_divisor").get<std::size_t>();
            }
            if (d.contains("num_sizes")) {
                spec.estimators.dfa.num_sizes = d.at("num_sizes").get<int>();
            }
        }
        if (est.contains("spectral")) {
            const auto& s = est.at("spectral");
            if (s.contains("freq_range")) {
                const auto range = s.at("freq_range").get<std::vector<double>>();
                if (range.size() != 2) config_error("\"freq_range\" must be [low, high]");
                spec.estimators.spectral.freq_range = {range[0], range[1]};
            }
            if (s.contains("detrend_mean")) {
                spec.estimators.spectral.detrend_mean = s.at("detrend_mean").get<bool>();
            }
        }
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.contains("path")) spec.output.path = o.at("path").get<std::string>();
        if (o.contains("full_precision")) {
            spec.output.full_precision = o.at("full_precision").get<bool>();
        }
        if (o.contains("distributions_dir")) {
            spec.output.distributions_dir = o.at("distributions_dir").get<std::string>();
        }
    }
    return spec;
}

}  // namespace fracdim
