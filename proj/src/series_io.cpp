#include "fracdim/series_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fracdim {

namespace {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Header tokens look like key=value; anything that does not parse is ignored
// so externally produced comments pass through harmlessly.
void parse_header_line(const std::string& line, Provenance& meta) {
    std::istringstream tokens(line.substr(1));
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (value.empty()) continue;
        try {
            if (key == "kind") {
                meta.kind = generator_kind_from_string(value);
            } else if (key == "target_d") {
                meta.target_dimension = std::stod(value);
            } else if (key == "seed") {
                meta.seed = std::stoull(value);
            } else if (key == "stride") {
                meta.stride = std::stoull(value);
            } else if (key == "snr_db") {
                meta.snr_db = std::stod(value);
            } else if (key == "segment") {
                meta.segment_index = std::stoull(value);
            }
        } catch (const std::exception&) {
            // Not our header after all; leave the field at its default.
        }
    }
}

}  // namespace

void write_series_csv(const TimeSeries& ts, std::ostream& out, bool with_header) {
    if (with_header) {
        out << "# kind=" << to_string(ts.meta.kind);
        if (ts.meta.target_dimension) out << " target_d=" << format_full(*ts.meta.target_dimension);
        out << " seed=" << ts.meta.seed;
        out << " stride=" << ts.meta.stride;
        if (ts.meta.snr_db) out << " snr_db=" << format_full(*ts.meta.snr_db);
        if (ts.meta.segment_index) out << " segment=" << *ts.meta.segment_index;
        out << "\n";
    }
    for (double v : ts.samples) {
        out << format_full(v) << "\n";
    }
}

void write_series_csv_file(const TimeSeries& ts, const std::string& path, bool with_header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_series_csv(ts, out, with_header);
    if (!out) throw std::runtime_error("write failed: " + path);
}

TimeSeries read_series_csv(std::istream& in) {
    TimeSeries ts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            parse_header_line(line, ts.meta);
            continue;
        }
        try {
            std::size_t consumed = 0;
            const double v = std::stod(line, &consumed);
            // Trailing junk after the number means this is not a sample line.
            for (std::size_t i = consumed; i < line.size(); ++i) {
                if (!std::isspace(static_cast<unsigned char>(line[i]))) {
                    throw std::invalid_argument("trailing characters");
                }
            }
            ts.samples.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("unparsable sample at line " + std::to_string(line_no) +
                                        ": " + line);
        }
    }
    return ts;
}

TimeSeries read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_series_csv(in);
}

}  // namespace fracdim
