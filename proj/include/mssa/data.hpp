#pragma once

#include "mssa/spectrum.hpp"

#include <compare>
#include <string>
#include <vector>

namespace mssa {

struct YearMonth {
    int year = 0;
    int month = 1;

    auto operator<=>(const YearMonth&) const = default;
    YearMonth next() const { return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1}; }
    std::string str() const;

    /// Accepts YYYY-MM or YYYY-MM-DD; the day is ignored.
    static YearMonth parse(const std::string& text);
};

/// Monthly series on a common date index; column c of `values` is series names[c].
struct SeriesFrame {
    std::vector<YearMonth> dates;
    Mat values;
    std::vector<std::string> names;
    std::vector<std::string> provenance;

    int rows() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }
    int column(const std::string& name) const;
};

/// Reads `value_columns` keyed by `date_column` from a comma-separated file with a header.
/// Missing or unparsable cells raise DataError naming the line.
SeriesFrame load_csv(const std::string& path, const std::string& date_column,
                     const std::vector<std::string>& value_columns);

/// Inner join on dates (intersection of the ranges). Throws DataError when empty.
SeriesFrame join(const std::vector<SeriesFrame>& frames);

/// Per column: x_t = log v_t - log v_{t-1}, then centred and scaled to unit sample
/// variance (divisor T). Drops the first date.
SeriesFrame log_diff_standardize(const SeriesFrame& frame);

struct TrimResult {
    SeriesFrame frame;
    long clipped = 0;
};

/// Clips every value to [-k, k] (input is standardized, so k is in units of sigma).
TrimResult trim_outliers(const SeriesFrame& frame, double k_sigma);

/// Writes date plus all columns.
void write_csv(const SeriesFrame& frame, const std::string& path);

/// Downloads a FRED series as CSV to `path` (network; only used when explicitly requested).
void fetch_fred_series(const std::string& series_id, const std::string& path);

}  // namespace mssa
