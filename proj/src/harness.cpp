#include "fracdim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracdim/numerics.hpp"
#include "fracdim/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracdim {

namespace {

constexpr const char* kCsvHeader =
    "generator,target_d,length,stride,snr_db,method,d_median,d_iqr,"
    "n_segments,mean_r2,n_failed,out_of_range_count";

std::string format_g(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.generators.empty()) throw std::invalid_argument("experiment: no generators");
    if (spec.methods.empty()) throw std::invalid_argument("experiment: no methods");
    if (spec.segment_lengths.empty()) throw std::invalid_argument("experiment: no segment lengths");
    if (spec.strides.empty()) throw std::invalid_argument("experiment: no strides");
    if (spec.snr_levels_db.empty()) throw std::invalid_argument("experiment: no noise levels");
    if (spec.replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
    for (std::size_t s : spec.strides) {
        if (s < 1) throw std::invalid_argument("experiment: strides must be >= 1");
    }
    for (const auto& len : spec.segment_lengths) {
        if (len && *len < 2) throw std::invalid_argument("experiment: segment lengths must be >= 2");
    }
}

uint64_t fbm_seed(const ExperimentSpec& spec, const GeneratorSpec& gen, int replicate) {
    return SeedMixer(spec.base_seed)
        .add("fbm-base")
        .add_double(gen.target_dimension)
        .add(gen.num_points)
        .add(static_cast<uint64_t>(replicate))
        .finish();
}

uint64_t noise_seed(const ExperimentSpec& spec, const GeneratorSpec& gen, double snr_db,
                    int replicate) {
    return SeedMixer(spec.base_seed)
        .add("noise")
        .add(to_string(gen.kind))
        .add_double(gen.target_dimension)
        .add(gen.num_points)
        .add_double(snr_db)
        .add(static_cast<uint64_t>(replicate))
        .finish();
}

std::size_t downsampled_length(std::size_t n, std::size_t stride) {
    return (n - 1) / stride + 1;
}

// Work item: one (generator, length, stride, snr, method) cell.
struct Cell {
    std::size_t gen_index;
    std::size_t snr_index;
    std::optional<std::size_t> requested_length;
    std::size_t segment_length;
    std::size_t stride;
    Method method;
};

// Sort key matching the documented record order. Clean comes before noisy,
// then decreasing SNR (cleanest first); whole-series cells sort after any
// explicit segment length.
bool cell_less(const Cell& a, const Cell& b, const ExperimentSpec& spec) {
    const auto& ga = spec.generators[a.gen_index];
    const auto& gb = spec.generators[b.gen_index];
    const auto key = [&spec](const Cell& c, const GeneratorSpec& g) {
        const double snr_key =
            spec.snr_levels_db[c.snr_index] ? -*spec.snr_levels_db[c.snr_index]
                                            : -std::numeric_limits<double>::infinity();
        const std::size_t len_key =
            c.requested_length ? *c.requested_length : std::numeric_limits<std::size_t>::max();
        return std::tuple(static_cast<int>(g.kind), g.target_dimension, len_key, c.stride, snr_key,
                          static_cast<int>(c.method));
    };
    return key(a, ga) < key(b, gb);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec, int workers) {
    validate_spec(spec);

    const std::size_t n_gen = spec.generators.size();
    const std::size_t n_snr = spec.snr_levels_db.size();
    const auto reps = static_cast<std::size_t>(spec.replicates);

    // Base signals are shared by every condition, and each noisy variant by
    // every (length, stride) cell, so both are built once up front. The
    // variant index layout is (gen, snr, replicate) row-major.
    std::vector<TimeSeries> variants(n_gen * n_snr * reps);
    for (std::size_t g = 0; g < n_gen; ++g) {
        const auto& gen = spec.generators[g];
        for (int r = 0; r < spec.replicates; ++r) {
            TimeSeries base;
            if (gen.kind == GeneratorKind::weierstrass) {
                base = weierstrass({gen.target_dimension, gen.num_points, gen.n_max});
            } else if (gen.kind == GeneratorKind::fbm) {
                base = fbm({2.0 - gen.target_dimension, gen.num_points, fbm_seed(spec, gen, r),
                            gen.scale});
            } else {
                throw std::invalid_argument("experiment: external series cannot be generated");
            }
            for (std::size_t s = 0; s < n_snr; ++s) {
                auto& slot = variants[(g * n_snr + s) * reps + static_cast<std::size_t>(r)];
                if (spec.snr_levels_db[s]) {
                    slot = add_white_noise(base, *spec.snr_levels_db[s],
                                           noise_seed(spec, gen, *spec.snr_levels_db[s], r));
                } else {
                    slot = base;
                }
            }
        }
    }

    // Enumerate cells, dropping combinations the decimated series cannot fill.
    std::vector<Cell> cells;
    for (std::size_t g = 0; g < n_gen; ++g) {
        for (const auto& req_len : spec.segment_lengths) {
            for (std::size_t stride : spec.strides) {
                const std::size_t ds_len = downsampled_length(spec.generators[g].num_points, stride);
                const std::size_t seg_len = req_len.value_or(ds_len);
                if (seg_len > ds_len || seg_len < 2) continue;
                for (std::size_t s = 0; s < n_snr; ++s) {
                    for (Method m : spec.methods) {
                        cells.push_back({g, s, req_len, seg_len, stride, m});
                    }
                }
            }
        }
    }
    std::sort(cells.begin(), cells.end(),
              [&spec](const Cell& a, const Cell& b) { return cell_less(a, b, spec); });

    ExperimentOutput out;
    out.records.resize(cells.size());
    out.estimates.resize(cells.size());

    // Cells are independent; estimates land in slots indexed by cell, so the
    // result is identical no matter how many workers run or in what order.
    std::exception_ptr failure;
    const auto n_cells = static_cast<std::int64_t>(cells.size());
#ifdef _OPENMP
    const int n_threads = workers > 0 ? workers : omp_get_max_threads();
#else
    (void)workers;
    const int n_threads = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
    for (std::int64_t c = 0; c < n_cells; ++c) {
        try {
            const Cell& cell = cells[c];
            const auto& gen = spec.generators[cell.gen_index];

            ResultRecord rec;
            rec.generator = gen.kind;
            rec.target_dimension = gen.target_dimension;
            rec.segment_length = cell.segment_length;
            rec.stride = cell.stride;
            rec.snr_db = spec.snr_levels_db[cell.snr_index];
            rec.method = cell.method;

            std::vector<double> estimates;
            std::vector<double> r_squared;
            for (std::size_t r = 0; r < reps; ++r) {
                const auto& variant = variants[(cell.gen_index * n_snr + cell.snr_index) * reps + r];
                const TimeSeries ds = downsample(variant, cell.stride);
                for (const auto& piece : segment(ds, cell.segment_length)) {
                    try {
                        const EstimateResult est = run_method(piece, cell.method, spec.estimators);
                        estimates.push_back(est.dimension);
                        r_squared.push_back(est.fit.r_squared);
                        if (est.flags.out_of_range) ++rec.out_of_range_count;
                        if (est.flags.delta_ambiguous) ++rec.delta_ambiguous_count;
                        if (est.flags.short_input) ++rec.short_input_count;
                    } catch (const DegenerateInput&) {
                        ++rec.n_failed;
                    }
                }
            }

            rec.n_segments = estimates.size();
            if (!estimates.empty()) {
                rec.dimension_median = median(estimates);
                rec.dimension_iqr = quantile(estimates, 0.75) - quantile(estimates, 0.25);
                rec.mean_r_squared =
                    std::accumulate(r_squared.begin(), r_squared.end(), 0.0) /
                    static_cast<double>(r_squared.size());
            }
            out.records[c] = std::move(rec);
            out.estimates[c] = std::move(estimates);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

ExperimentSpec paper_grid_spec(uint64_t base_seed) {
    ExperimentSpec spec;
    for (double d : {1.2, 1.4, 1.5, 1.6, 1.8}) {
        spec.generators.push_back({GeneratorKind::weierstrass, d, 314160, 1021, 1.0});
    }
    for (double d : {1.2, 1.4, 1.5, 1.6, 1.8}) {
        spec.generators.push_back({GeneratorKind::fbm, d, 320000, 0, 1.0});
    }
    spec.segment_lengths = {std::size_t{500}, std::size_t{10000}, std::nullopt};
    spec.strides = {1, 10, 100};
    spec.snr_levels_db = {std::nullopt, 70.0, 60.0, 50.0};
    spec.methods = {Method::higuchi, Method::ghe, Method::dfa, Method::spectral};
    spec.base_seed = base_seed;
    return spec;
}

void emit_csv(const std::vector<ResultRecord>& records, std::ostream& out, bool full_precision) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    const int digits = full_precision ? 17 : 6;
    out << kCsvHeader << "\n";
    for (const auto& rec : records) {
        out << to_string(rec.generator) << ',' << format_g(rec.target_dimension, digits) << ','
            << rec.segment_length << ',' << rec.stride << ',';
        if (rec.snr_db) out << format_g(*rec.snr_db, digits);
        out << ',' << to_string(rec.method) << ',';
        if (rec.dimension_median) out << format_g(*rec.dimension_median, digits);
        out << ',';
        if (rec.dimension_iqr) out << format_g(*rec.dimension_iqr, digits);
        out << ',' << rec.n_segments << ',';
        if (rec.mean_r_squared) out << format_g(*rec.mean_r_squared, digits);
        out << ',' << rec.n_failed << ',' << rec.out_of_range_count << "\n";
    }
}

std::vector<ResultRecord> parse_result_csv(std::istream& in) {
    std::string line;
    bool header_seen = false;
    std::vector<ResultRecord> records;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw std::invalid_argument("result CSV: unexpected header: " + line);
            }
            header_seen = true;
            continue;
        }

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 12) {
            throw std::invalid_argument("result CSV: wrong field count at line " +
                                        std::to_string(line_no));
        }

        try {
            ResultRecord rec;
            rec.generator = generator_kind_from_string(fields[0]);
            rec.target_dimension = std::stod(fields[1]);
            rec.segment_length = std::stoull(fields[2]);
            rec.stride = std::stoull(fields[3]);
            if (!fields[4].empty()) rec.snr_db = std::stod(fields[4]);
            rec.method = method_from_string(fields[5]);
            if (!fields[6].empty()) rec.dimension_median = std::stod(fields[6]);
            if (!fields[7].empty()) rec.dimension_iqr = std::stod(fields[7]);
            rec.n_segments = std::stoull(fields[8]);
            if (!fields[9].empty()) rec.mean_r_squared = std::stod(fields[9]);
            rec.n_failed = std::stoull(fields[10]);
            rec.out_of_range_count = std::stoull(fields[11]);
            records.push_back(rec);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("result CSV: unparsable value at line " +
                                        std::to_string(line_no));
        }
    }
    if (!header_seen) throw std::invalid_argument("result CSV: missing header");
    return records;
}

void emit_distribution_data(const ResultRecord& record, const std::vector<double>& estimates,
                            std::ostream& out) {
    out << "# generator=" << to_string(record.generator)
        << " target_d=" << format_g(record.target_dimension, 17)
        << " length=" << record.segment_length << " stride=" << record.stride << " snr_db=";
    if (record.snr_db) out << format_g(*record.snr_db, 17);
    out << " method=" << to_string(record.method) << " n_segments=" << record.n_segments
        << " n_failed=" << record.n_failed << "\n";
    if (estimates.size() >= 4) {
        const auto stats = box_plot_stats(estimates);
        out << "# box_plot min=" << format_g(stats.min, 17) << " q1=" << format_g(stats.q1, 17)
            << " median=" << format_g(stats.median, 17) << " q3=" << format_g(stats.q3, 17)
            << " max=" << format_g(stats.max, 17) << " n_outliers=" << stats.outliers.size() << "\n";
    }
    for (double v : estimates) out << format_g(v, 17) << "\n";
}

std::string cell_file_stem(const ResultRecord& record) {
    std::ostringstream name;
    name << to_string(record.generator) << "_d" << format_g(record.target_dimension, 6) << "_len"
         << record.segment_length << "_stride" << record.stride << "_";
    if (record.snr_db) {
        name << "snr" << format_g(*record.snr_db, 6);
    } else {
        name << "clean";
    }
    name << "_" << to_string(record.method);
    return name.str();
}

}  // namespace fracdim
