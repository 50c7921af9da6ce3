#pragma once

#include <iosfwd>
#include <string>

#include "npmojo/segment.hpp"
#include "npmojo/time_series.hpp"

namespace npmojo {

enum class Impute { None, Locf };

// Comma-separated numbers, one row per time point. Empty, NA and NaN fields are
// missing: rejected with InputError unless imputed by last observation carried forward.
TimeSeries read_csv(std::istream& in, bool header = false, Impute impute = Impute::None);
TimeSeries read_csv_file(const std::string& path, bool header = false, Impute impute = Impute::None);

// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double v);
void write_csv(std::ostream& out, const TimeSeries& ts, bool header = false);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace npmojo
