#include "mssa/data.hpp"

#include "mssa/error.hpp"

#include <boost/algorithm/string.hpp>

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mssa {

namespace {

int parse_int(const std::string& s, const std::string& what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DataError("cannot parse " + what + " '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    boost::split(cells, line, boost::is_any_of(","));
    for (auto& c : cells) {
        boost::trim(c);
        boost::trim_if(c, boost::is_any_of("\""));
    }
    return cells;
}

}  // namespace

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of("-/"));
    if (parts.size() < 2 || parts.size() > 3) {
        throw DataError("unrecognised date '" + text + "'");
    }
    YearMonth ym{parse_int(parts[0], "year"), parse_int(parts[1], "month")};
    if (ym.month < 1 || ym.month > 12) {
        throw DataError("month out of range in '" + text + "'");
    }
    return ym;
}

int SeriesFrame::column(const std::string& name) const {
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c] == name) {
            return static_cast<int>(c);
        }
    }
    throw DataError("no column named '" + name + "'");
}

SeriesFrame load_csv(const std::string& path, const std::string& date_column,
                     const std::vector<std::string>& value_columns) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("'" + path + "' is empty");
    }
    const std::vector<std::string> header = split_line(line);
    auto index_of = [&](const std::string& name) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (boost::iequals(header[c], name)) {
                return c;
            }
        }
        throw DataError("'" + path + "' has no column '" + name + "'");
    };
    const std::size_t date_idx = index_of(date_column);
    std::vector<std::size_t> value_idx;
    for (const auto& v : value_columns) {
        value_idx.push_back(index_of(v));
    }

    std::vector<YearMonth> dates;
    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        boost::trim(line);
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_line(line);
        const std::string where = path + ":" + std::to_string(line_no);
        if (cells.size() < header.size()) {
            throw DataError(where + ": expected " + std::to_string(header.size()) + " cells");
        }
        YearMonth ym;
        try {
            ym = YearMonth::parse(cells[date_idx]);
        } catch (const DataError& e) {
            throw DataError(where + ": " + e.what());
        }
        if (!dates.empty() && !(dates.back() < ym)) {
            throw DataError(where + ": dates must be strictly increasing");
        }
        std::vector<double> row;
        for (std::size_t c : value_idx) {
            const std::string& cell = cells[c];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw DataError(where + ": missing or non-numeric value '" + cell + "' in column '" +
                                header[c] + "'");
            }
            row.push_back(v);
        }
        dates.push_back(ym);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw DataError("'" + path + "' has no data rows");
    }
    SeriesFrame f;
    f.dates = std::move(dates);
    f.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(value_idx.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < value_idx.size(); ++c) {
            f.values(r, c) = rows[r][c];
        }
    }
    f.names = value_columns;
    f.provenance.assign(value_columns.size(), path);
    return f;
}

SeriesFrame join(const std::vector<SeriesFrame>& frames) {
    if (frames.empty()) {
        throw DataError("nothing to join");
    }
    std::map<YearMonth, int> count;
    for (const auto& f : frames) {
        for (const auto& d : f.dates) {
            ++count[d];
        }
    }
    std::vector<YearMonth> common;
    for (const auto& [d, c] : count) {
        if (c == static_cast<int>(frames.size())) {
            common.push_back(d);
        }
    }
    if (common.empty()) {
        throw DataError("series have no dates in common");
    }
    SeriesFrame out;
    out.dates = common;
    int total_cols = 0;
    for (const auto& f : frames) {
        total_cols += f.cols();
    }
    out.values.resize(static_cast<Eigen::Index>(common.size()), total_cols);
    int col = 0;
    for (const auto& f : frames) {
        std::map<YearMonth, int> where;
        for (int r = 0; r < f.rows(); ++r) {
            where[f.dates[r]] = r;
        }
        for (std::size_t r = 0; r < common.size(); ++r) {
            out.values.row(r).segment(col, f.cols()) = f.values.row(where.at(common[r]));
        }
        out.names.insert(out.names.end(), f.names.begin(), f.names.end());
        out.provenance.insert(out.provenance.end(), f.provenance.begin(), f.provenance.end());
        col += f.cols();
    }
    return out;
}

SeriesFrame log_diff_standardize(const SeriesFrame& frame) {
    if (frame.rows() < 3) {
        throw DataError("need at least 3 observations to difference and standardize");
    }
    if ((frame.values.array() <= 0.0).any()) {
        throw DataError("log transform needs strictly positive levels");
    }
    const Mat logs = frame.values.array().log();
    const int T = frame.rows() - 1;
    Mat diff = logs.bottomRows(T) - logs.topRows(T);
    for (int c = 0; c < diff.cols(); ++c) {
        diff.col(c).array() -= diff.col(c).mean();
        const double sd = std::sqrt(diff.col(c).squaredNorm() / T);
        if (!(sd > 1e-12)) {
            throw DataError("series '" + frame.names[c] +
                            "' has zero variance after differencing; cannot standardize");
        }
        diff.col(c) /= sd;
    }
    SeriesFrame out;
    out.dates.assign(frame.dates.begin() + 1, frame.dates.end());
    out.values = std::move(diff);
    out.names = frame.names;
    out.provenance = frame.provenance;
    return out;
}

TrimResult trim_outliers(const SeriesFrame& frame, double k_sigma) {
    if (!(k_sigma >= 0.0)) {
        throw ValidationError("clip threshold must be non-negative");
    }
    TrimResult r{frame, 0};
    r.clipped = (frame.values.array().abs() > k_sigma).count();
    r.frame.values = frame.values.cwiseMax(-k_sigma).cwiseMin(k_sigma);
    return r;
}

void write_csv(const SeriesFrame& frame, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    out << "date";
    for (const auto& n : frame.names) {
        out << "," << n;
    }
    out << "\n";
    out.precision(12);
    for (int r = 0; r < frame.rows(); ++r) {
        out << frame.dates[r].str() << "-01";
        for (int c = 0; c < frame.cols(); ++c) {
            out << "," << frame.values(r, c);
        }
        out << "\n";
    }
}

}  // namespace mssa
