#pragma once

#include <iosfwd>
#include <string>

#include "fracdim/types.hpp"

namespace fracdim {

// One sample per line at 17 significant digits (exact double round-trip),
// preceded by a single '#' provenance header when with_header is set.
void write_series_csv(const TimeSeries& ts, std::ostream& out, bool with_header = true);
void write_series_csv_file(const TimeSeries& ts, const std::string& path, bool with_header = true);

// Reads the format above. Lines starting with '#' are parsed for provenance
// if they match the writer's key=value layout and skipped otherwise; blank
// lines are ignored. Throws std::invalid_argument on unparsable samples.
TimeSeries read_series_csv(std::istream& in);
TimeSeries read_series_csv_file(const std::string& path);

}  // namespace fracdim
