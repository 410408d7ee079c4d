#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracdim/estimators.hpp"
#include "fracdim/generators.hpp"
#include "fracdim/types.hpp"

namespace fracdim {

// One generator instance of the grid. For fbm the Hurst exponent is derived
// as 2 - target_dimension; n_max only applies to weierstrass, scale to fbm.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::weierstrass;
    double target_dimension = 1.5;
    std::size_t num_points = 314160;
    int n_max = 1021;
    double scale = 1.0;
};

// Where the CLI puts results; run_experiment itself never touches the disk.
struct OutputSpec {
    std::string path;               // result CSV destination, empty = stdout
    bool full_precision = false;
    std::string distributions_dir;  // per-cell estimate dumps, empty = skip
};

// Declarative grid: every signal is generated once, then each combination of
// (segment length, stride, noise level, method) becomes one result row.
// nullopt in segment_lengths means "whole series"; nullopt in snr_levels_db
// means clean. Combinations where the decimated series is shorter than the
// requested segment length are skipped as structurally impossible.
struct ExperimentSpec {
    std::vector<GeneratorSpec> generators;
    std::vector<std::optional<std::size_t>> segment_lengths = {std::nullopt};
    std::vector<std::size_t> strides = {1};
    std::vector<std::optional<double>> snr_levels_db = {std::nullopt};
    std::vector<Method> methods = {Method::higuchi, Method::ghe, Method::dfa, Method::spectral};
    uint64_t base_seed = 0;
    int replicates = 1;
    EstimatorSettings estimators;
    OutputSpec output;
};

// One output row: cell coordinates plus the median-aggregated estimate.
// Cells where every segment failed keep n_segments == 0 and leave the
// aggregate fields unset.
struct ResultRecord {
    GeneratorKind generator = GeneratorKind::external;
    double target_dimension = 0.0;
    std::size_t segment_length = 0;  // actual samples per analyzed segment
    std::size_t stride = 1;
    std::optional<double> snr_db;
    Method method = Method::higuchi;
    std::optional<double> dimension_median;
    std::optional<double> dimension_iqr;
    std::size_t n_segments = 0;  // segments that produced an estimate
    std::optional<double> mean_r_squared;
    std::size_t n_failed = 0;
    std::size_t out_of_range_count = 0;
    std::size_t delta_ambiguous_count = 0;
    std::size_t short_input_count = 0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct ExperimentOutput {
    std::vector<ResultRecord> records;
    // Raw per-segment estimates in segment order, one vector per record, for
    // distribution files and box plots.
    std::vector<std::vector<double>> estimates;
};

// Runs the whole grid. workers > 0 caps the number of concurrent cells;
// 0 uses the OpenMP default. Output is deterministic for a fixed spec
// regardless of worker count: every cell derives its noise stream from
// (base_seed, generator, noise level) alone, and records are sorted by
// (generator, target dimension, requested length, stride, snr, method).
ExperimentOutput run_experiment(const ExperimentSpec& spec, int workers = 0);

// The built-in grid of the accuracy comparison: cosine-sum and fbm signals
// at D in {1.2, 1.4, 1.5, 1.6, 1.8}, segment lengths {500, 10000, full},
// strides {1, 10, 100}, SNR {clean, 70, 60, 50} dB, all four methods.
ExperimentSpec paper_grid_spec(uint64_t base_seed);

// Reads a JSON experiment description; see README for the schema.
ExperimentSpec load_experiment_spec(const std::string& path);

// Columns: generator,target_d,length,stride,snr_db,method,d_median,d_iqr,
// n_segments,mean_r2,n_failed,out_of_range_count. Floats use 6 significant
// digits unless full_precision (17 digits, exact round-trip).
void emit_csv(const std::vector<ResultRecord>& records, std::ostream& out, bool full_precision = false);

// Inverse of emit_csv for the columns it carries; flag counts that are not
// serialized come back as 0.
std::vector<ResultRecord> parse_result_csv(std::istream& in);

// One estimate per line, preceded by '#' header lines carrying the cell
// coordinates and box_plot_stats of the estimates (the latter only when at
// least 4 estimates exist).
void emit_distribution_data(const ResultRecord& record, const std::vector<double>& estimates,
                            std::ostream& out);

// File name stem like "weierstrass_d1.4_len500_stride1_clean_higuchi".
std::string cell_file_stem(const ResultRecord& record);

}  // namespace fracdim
