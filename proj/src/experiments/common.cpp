#include "common.hpp"

#include "mssa/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace mssa {

std::string fixed(double v, int digits) {
    if (!std::isfinite(v)) {
        return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    std::string s = os.str();
    if (s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, s.front() == '-' ? 1 : 0);
    }
    return s;
}

void Table::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << "\n";
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
}

std::string Table::to_text() const {
    std::vector<std::size_t> width(header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], cells[i].size());
        }
    };
    measure(header);
    for (const auto& r : rows) {
        measure(r);
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
        }
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
    return os.str();
}

void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<Vec>& columns, int first_index) {
    if (names.size() != columns.size() || columns.empty()) {
        throw InvalidDimension("column names and columns differ");
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << "index";
    for (const auto& n : names) {
        out << "," << n;
    }
    out << "\n";
    Eigen::Index rows = 0;
    for (const auto& c : columns) {
        rows = std::max(rows, c.size());
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
        out << first_index + r;
        for (const auto& c : columns) {
            out << "," << (r < c.size() ? fixed(c(r), 10) : "");
        }
        out << "\n";
    }
}

namespace detail {

double full_target_variance(const MatrixFilter& gamma_row, const MAExpansion& xi,
                            const NoiseCovariance& sigma) {
    const MatrixFilter all =
        convolve_range(gamma_row, xi, gamma_row.first_lag, gamma_row.last_lag() + xi.length() - 1);
    return target_variance(all, sigma);
}

std::pair<Vec, Vec> align(const FilteredSeries& a, const FilteredSeries& b) {
    const int t0 = std::max(a.first_t, b.first_t);
    const int t1 = std::min(a.last_t(), b.last_t());
    if (t1 - t0 < 2) {
        throw DataError("filtered series do not overlap");
    }
    return {slice(a, 0, t0, t1), slice(b, 0, t0, t1)};
}

Vec slice(const FilteredSeries& s, int c, int t0, int t1) {
    if (t0 < s.first_t || t1 > s.last_t() || t1 < t0) {
        throw DataError("requested range lies outside the filtered series");
    }
    return s.values.col(c).segment(t0 - s.first_t, t1 - t0 + 1);
}

FilteredSeries run_filter(const MAExpansion& weights, const Mat& x) {
    return apply_filter(weights, x);
}

std::filesystem::path out_file(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return dir / name;
}

Vec index_axis(Eigen::Index n, double first) {
    return Vec::LinSpaced(n, first, first + static_cast<double>(n - 1));
}

}  // namespace detail
}  // namespace mssa
