#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "riskindexlab/date.hpp"
#include "riskindexlab/errors.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

struct CsvColumns {
    std::string date = "date";
    std::string value = "level";
};

// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw NumericError("cannot format value");
    return std::string(buf, ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline bool parse_real(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

struct RawRow {
    Date date;
    double value;
    std::size_t row;
};

// Reads (date, value) rows; `positive` requires value > 0. Lines starting
// with '#' are comments.
inline std::vector<RawRow> read_dated_rows(std::istream& in, const std::string& source,
                                           const CsvColumns& cols, bool positive) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (!t.empty() && t.front() != '#') {
            header_line = line;
            break;
        }
    }
    if (header_line.empty()) throw InputError(source + ": empty file (header row expected)");
    header = split_fields(header_line);
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw InputError(source + ": header has no '" + name + "' column");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col = column(cols.date);
    const std::size_t value_col = column(cols.value);

    std::vector<RawRow> rows;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        ++row;
        const auto fields = split_fields(line);
        const std::string where = source + ": row " + std::to_string(row) + " (line " +
                                  std::to_string(line_no) + ")";
        if (fields.size() <= std::max(date_col, value_col)) {
            throw InputError(where + ": expected at least " +
                             std::to_string(std::max(date_col, value_col) + 1) + " fields");
        }
        auto date = try_parse_date(fields[date_col]);
        if (!date) {
            throw InputError(where + ": unparseable date '" + std::string(fields[date_col]) + "'");
        }
        double v = 0.0;
        if (!parse_real(fields[value_col], v) || !std::isfinite(v)) {
            throw InputError(where + ": unparseable " + cols.value + " '" +
                             std::string(fields[value_col]) + "'");
        }
        if (positive && v <= 0.0) {
            throw InputError(where + ": " + cols.value + " must be > 0, got " +
                             std::string(fields[value_col]));
        }
        rows.push_back({*date, v, row});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw InputError(source + ": duplicate date " + rows[i].date.iso() + " at rows " +
                             std::to_string(rows[i - 1].row) + " and " +
                             std::to_string(rows[i].row));
        }
    }
    return rows;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file " + path.string());
    return in;
}

}  // namespace detail

inline LevelSeries read_levels(std::istream& in, const std::string& source = "<stream>",
                               const CsvColumns& cols = {}) {
    auto rows = detail::read_dated_rows(in, source, cols, true);
    std::vector<Date> dates;
    std::vector<double> levels;
    dates.reserve(rows.size());
    levels.reserve(rows.size());
    for (const auto& r : rows) {
        dates.push_back(r.date);
        levels.push_back(r.value);
    }
    return LevelSeries(std::move(dates), std::move(levels), source);
}

/// Loads a `date,level` CSV. Rows may come in any order; the result is sorted.
inline LevelSeries ingest_csv(const std::filesystem::path& path, const CsvColumns& cols = {}) {
    auto in = detail::open_input(path);
    auto series = read_levels(in, path.string(), cols);
    return LevelSeries(series.dates(), series.levels(), path.stem().string());
}

/// Loads a `date,rate` CSV (decimal per annum, any sign).
inline DatedSeries ingest_rates(const std::filesystem::path& path,
                                const CsvColumns& cols = {"date", "rate"}) {
    auto in = detail::open_input(path);
    auto rows = detail::read_dated_rows(in, path.string(), cols, false);
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& r : rows) {
        dates.push_back(r.date);
        values.push_back(r.value);
    }
    return DatedSeries(std::move(dates), std::move(values), "rate " + path.stem().string());
}

inline void write_levels(std::ostream& out, const LevelSeries& series, const CsvColumns& cols = {}) {
    out << cols.date << ',' << cols.value << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.date(i).iso() << ',' << format_double(series.level(i)) << '\n';
    }
}

inline std::string emit_csv(const LevelSeries& series, const CsvColumns& cols = {}) {
    std::ostringstream os;
    write_levels(os, series, cols);
    return os.str();
}

inline void write_levels(const std::filesystem::path& path, const LevelSeries& series,
                         const CsvColumns& cols = {}) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_levels(out, series, cols);
}

}  // namespace riskindexlab
