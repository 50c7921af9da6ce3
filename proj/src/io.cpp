#include "npmojo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "npmojo/errors.hpp"

namespace npmojo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_missing(std::string_view f) { return f.empty() || f == "NA" || f == "na" || f == "NaN" || f == "nan"; }

}  // namespace

TimeSeries read_csv(std::istream& in, bool header, Impute impute) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t p = 0;
  std::vector<double> values;
  std::vector<std::optional<double>> last;
  std::size_t rows = 0;
  if (header && std::getline(in, line)) ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = sv.find(',', start);
      fields.push_back(trim(sv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (p == 0) {
      p = fields.size();
      last.assign(p, std::nullopt);
    } else if (fields.size() != p) {
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(p) + " fields, found " +
                       std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const auto f = fields[j];
      double v = 0.0;
      if (is_missing(f)) {
        if (impute == Impute::None)
          throw InputError("line " + std::to_string(lineno) + ": missing value (use --impute locf to fill)");
        if (!last[j]) throw InputError("line " + std::to_string(lineno) + ": missing value with no earlier observation");
        v = *last[j];
      } else {
        const char* b = f.data();
        const char* e = f.data() + f.size();
        if (*b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || !std::isfinite(v))
          throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + std::string(f) + "' as a number");
      }
      last[j] = v;
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw InputError("input contains no data rows");
  return TimeSeries(rows, p, std::move(values));
}

TimeSeries read_csv_file(const std::string& path, bool header, Impute impute) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv(in, header, impute);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const TimeSeries& ts, bool header) {
  if (header) {
    for (std::size_t j = 0; j < ts.p(); ++j) out << (j ? "," : "") << "x" << (j + 1);
    out << '\n';
  }
  for (std::size_t t = 0; t < ts.n(); ++t) {
    for (std::size_t j = 0; j < ts.p(); ++j) out << (j ? "," : "") << format_double(ts(t, j));
    out << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace npmojo
