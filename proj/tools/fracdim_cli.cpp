#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fracdim/harness.hpp"
#include "fracdim/rng.hpp"
#include "fracdim/series_io.hpp"

namespace {

using namespace fracdim;

// Writes records (and optional per-cell distribution files) the same way for
// the experiment and paper-grid subcommands.
void write_experiment_output(const ExperimentOutput& result, const OutputSpec& output) {
    if (output.path.empty()) {
        emit_csv(result.records, std::cout, output.full_precision);
    } else {
        std::ofstream out(output.path);
        if (!out) throw std::runtime_error("cannot open for writing: " + output.path);
        emit_csv(result.records, out, output.full_precision);
        if (!out) throw std::runtime_error("write failed: " + output.path);
    }

    if (output.distributions_dir.empty()) return;
    std::filesystem::create_directories(output.distributions_dir);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto path = std::filesystem::path(output.distributions_dir) /
                          (cell_file_stem(result.records[i]) + ".csv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
        emit_distribution_data(result.records[i], result.estimates[i], out);
    }
}

// Higuchi has no entry here: its raw exponent is the dimension itself, so a
// second line would just repeat the one above.
const char* raw_exponent_name(Method m) {
    switch (m) {
        case Method::higuchi: return nullptr;
        case Method::ghe: return "hurst";
        case Method::dfa: return "delta";
        case Method::spectral: return "beta";
    }
    return "exponent";
}

void print_estimate(const EstimateResult& est) {
    std::printf("method: %s\n", to_string(est.method));
    std::printf("dimension: %.10g\n", est.dimension);
    if (const char* name = raw_exponent_name(est.method))
        std::printf("%s: %.10g\n", name, est.raw_exponent);
    std::printf("r_squared: %.10g\n", est.fit.r_squared);
    std::printf("fit_points: %zu\n", est.fit.n_points);
    std::string flags;
    if (est.flags.out_of_range) flags += " out_of_range";
    if (est.flags.delta_ambiguous) flags += " delta_ambiguous";
    if (est.flags.short_input) flags += " short_input";
    std::printf("flags:%s\n", flags.empty() ? " none" : flags.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-affine signal generation and fractal dimension estimation"};
    app.require_subcommand(1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Generate a test signal and write it as CSV");
    std::optional<double> wf_dim, fbm_dim, fbm_hurst;
    std::optional<std::size_t> gen_points;
    int gen_n_max = 1021;
    double gen_scale = 1.0;
    uint64_t gen_seed = 0;
    std::optional<double> gen_snr_db;
    std::size_t gen_stride = 1;
    std::string gen_out;
    bool gen_no_header = false;
    gen_cmd->add_option("--weierstrass", wf_dim, "Weierstrass signal with this target dimension");
    gen_cmd->add_option("--fbm", fbm_dim, "fBm path with this target dimension");
    gen_cmd->add_option("--hurst", fbm_hurst, "fBm path with this Hurst exponent");
    gen_cmd->add_option("--points,--length", gen_points, "Number of samples");
    gen_cmd->add_option("--n-max", gen_n_max, "Highest cosine term index (weierstrass)");
    gen_cmd->add_option("--scale", gen_scale, "Unit-lag increment variance (fbm)");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_cmd->add_option("--snr-db", gen_snr_db, "Add white noise at this SNR");
    gen_cmd->add_option("--stride", gen_stride, "Keep every stride-th sample");
    gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");
    gen_cmd->add_flag("--no-header", gen_no_header, "Omit the provenance header line");

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Estimate the fractal dimension of a signal CSV");
    std::string est_method, est_input;
    EstimatorSettings settings;
    std::optional<double> f_lo, f_hi;
    bool keep_mean = false;
    est_cmd->add_option("--method", est_method, "higuchi | ghe | dfa | spectral")->required();
    est_cmd->add_option("--input", est_input, "Signal CSV (one sample per line)")->required();
    est_cmd->add_option("--k-max", settings.higuchi.k_max, "Largest lag (higuchi)");
    est_cmd->add_option("--q", settings.ghe.q, "Moment order (ghe)");
    est_cmd->add_option("--tau-max", settings.ghe.tau_max, "Largest lag (ghe)");
    est_cmd->add_option("--l-min", settings.dfa.l_min, "Smallest box size (dfa)");
    est_cmd->add_option("--l-max-divisor", settings.dfa.l_max_divisor,
                        "Largest box is length/this (dfa)");
    est_cmd->add_option("--num-sizes", settings.dfa.num_sizes, "Box size count (dfa)");
    est_cmd->add_option("--f-lo", f_lo, "Lower fit frequency in cycles/sample (spectral)");
    est_cmd->add_option("--f-hi", f_hi, "Upper fit frequency in cycles/sample (spectral)");
    est_cmd->add_flag("--keep-mean", keep_mean, "Skip mean removal before the periodogram");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment grid from a JSON config");
    std::string exp_config;
    std::optional<std::string> exp_out, exp_dist;
    std::optional<uint64_t> exp_seed;
    int exp_workers = 0;
    bool exp_full_precision = false;
    exp_cmd->add_option("--config", exp_config, "JSON experiment description")->required();
    exp_cmd->add_option("--out", exp_out, "Result CSV path (overrides config)");
    exp_cmd->add_option("--distributions", exp_dist, "Directory for per-cell estimate files");
    exp_cmd->add_option("--seed", exp_seed, "Base seed (overrides config)");
    exp_cmd->add_option("--workers", exp_workers, "Max concurrent cells (0 = all cores)");
    exp_cmd->add_flag("--full-precision", exp_full_precision, "Emit floats at 17 digits");

    // paper-grid
    auto* grid_cmd =
        app.add_subcommand("paper-grid", "Run the built-in accuracy comparison grid");
    std::string grid_out, grid_dist;
    uint64_t grid_seed = 0;
    int grid_workers = 0;
    bool grid_full_precision = false;
    grid_cmd->add_option("--out", grid_out, "Result CSV path (default stdout)");
    grid_cmd->add_option("--distributions", grid_dist, "Directory for per-cell estimate files");
    grid_cmd->add_option("--seed", grid_seed, "Base seed");
    grid_cmd->add_option("--workers", grid_workers, "Max concurrent cells (0 = all cores)");
    grid_cmd->add_flag("--full-precision", grid_full_precision, "Emit floats at 17 digits");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            const int picked = int(wf_dim.has_value()) + int(fbm_dim.has_value()) +
                               int(fbm_hurst.has_value());
            if (picked != 1) {
                throw std::invalid_argument(
                    "pick exactly one of --weierstrass, --fbm, --hurst");
            }
            if (gen_stride == 0) throw std::invalid_argument("--stride must be at least 1");
            TimeSeries ts;
            if (wf_dim) {
                ts = weierstrass({*wf_dim, gen_points.value_or(314160), gen_n_max});
            } else {
                const double hurst = fbm_hurst ? *fbm_hurst : 2.0 - *fbm_dim;
                ts = fbm({hurst, gen_points.value_or(320000), gen_seed, gen_scale});
            }
            if (gen_snr_db) {
                ts = add_white_noise(ts, *gen_snr_db,
                                     SeedMixer(gen_seed).add("cli-noise").finish());
                // The noise realization is a function of --seed, so record that
                // seed even when the underlying signal needed none.
                ts.meta.seed = gen_seed;
            }
            if (gen_stride > 1) ts = downsample(ts, gen_stride);
            if (gen_out.empty()) {
                write_series_csv(ts, std::cout, !gen_no_header);
            } else {
                write_series_csv_file(ts, gen_out, !gen_no_header);
            }
        } else if (est_cmd->parsed()) {
            if (f_lo || f_hi) {
                if (!(f_lo && f_hi)) {
                    throw std::invalid_argument("--f-lo and --f-hi must be given together");
                }
                settings.spectral.freq_range = {*f_lo, *f_hi};
            }
            settings.spectral.detrend_mean = !keep_mean;
            const TimeSeries ts = read_series_csv_file(est_input);
            print_estimate(run_method(ts, method_from_string(est_method), settings));
        } else if (exp_cmd->parsed()) {
            ExperimentSpec spec = load_experiment_spec(exp_config);
            if (exp_seed) spec.base_seed = *exp_seed;
            if (exp_out) spec.output.path = *exp_out;
            if (exp_dist) spec.output.distributions_dir = *exp_dist;
            if (exp_full_precision) spec.output.full_precision = true;
            write_experiment_output(run_experiment(spec, exp_workers), spec.output);
        } else if (grid_cmd->parsed()) {
            ExperimentSpec spec = paper_grid_spec(grid_seed);
            spec.output.path = grid_out;
            spec.output.distributions_dir = grid_dist;
            spec.output.full_precision = grid_full_precision;
            write_experiment_output(run_experiment(spec, grid_workers), spec.output);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
