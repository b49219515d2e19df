#include "mssa/data.hpp"
#include "mssa/error.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace mssa;

namespace {

std::filesystem::path scratch_file(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "mssa_data_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path;
}

SeriesFrame frame_of(const std::vector<double>& v) {
    SeriesFrame f;
    YearMonth d{2000, 1};
    for (std::size_t i = 0; i < v.size(); ++i) {
        f.dates.push_back(d);
        d = d.next();
    }
    f.values = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
    f.names = {"x"};
    f.provenance = {"test"};
    return f;
}

}  // namespace

TEST_CASE("dates") {
    CHECK(YearMonth::parse("1955-02-01") == YearMonth{1955, 2});
    CHECK(YearMonth::parse("2024-09") == YearMonth{2024, 9});
    CHECK(YearMonth{2023, 12}.next() == YearMonth{2024, 1});
    CHECK(YearMonth{1999, 3}.str() == "1999-03");
    CHECK(YearMonth::parse("2024/09/01") == YearMonth{2024, 9});
    CHECK_THROWS_AS(YearMonth::parse("2024.09.01"), DataError);
    CHECK_THROWS_AS(YearMonth::parse("2024-13-01"), DataError);
}

TEST_CASE("loading and joining CSV files") {
    const auto a = scratch_file("a.csv", "observation_date,A\n2000-01-01,1.0\n2000-02-01,2.0\n2000-03-01,3.0\n");
    const auto b = scratch_file("b.csv", "observation_date,B,extra\n2000-02-01,20,x\n2000-03-01,30,y\n2000-04-01,40,z\n");
    const SeriesFrame fa = load_csv(a.string(), "observation_date", {"A"});
    const SeriesFrame fb = load_csv(b.string(), "observation_date", {"B"});
    CHECK(fa.rows() == 3);
    CHECK(fa.provenance.front().find("a.csv") != std::string::npos);
    const SeriesFrame j = join({fa, fb});
    CHECK(j.rows() == 2);
    CHECK(j.cols() == 2);
    CHECK(j.dates.front() == YearMonth{2000, 2});
    CHECK(j.values(1, j.column("B")) == 30.0);
    CHECK_THROWS_AS(j.column("C"), DataError);
}

TEST_CASE("CSV errors name the line") {
    const auto missing = scratch_file("m.csv", "date,A\n2000-01-01,1\n2000-02-01,\n");
    try {
        load_csv(missing.string(), "date", {"A"});
        FAIL("expected a DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    const auto unordered = scratch_file("u.csv", "date,A\n2000-02-01,1\n2000-01-01,2\n");
    CHECK_THROWS_AS(load_csv(unordered.string(), "date", {"A"}), DataError);
    CHECK_THROWS_AS(load_csv(unordered.string(), "date", {"Z"}), DataError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "date", {"A"}), DataError);

    const auto c = scratch_file("c.csv", "date,C\n1990-01-01,1\n");
    const auto d = scratch_file("d.csv", "date,D\n1991-01-01,1\n");
    CHECK_THROWS_AS(join({load_csv(c.string(), "date", {"C"}), load_csv(d.string(), "date", {"D"})}), DataError);
}

TEST_CASE("log differences are standardized") {
    std::vector<double> levels;
    double v = 100.0;
    for (int t = 0; t < 120; ++t) {
        v *= std::exp(0.01 * std::sin(0.3 * t) + 0.002);
        levels.push_back(v);
    }
    const SeriesFrame out = log_diff_standardize(frame_of(levels));
    CHECK(out.rows() == 119);
    CHECK(out.dates.front() == YearMonth{2000, 2});
    const Vec x = out.values.col(0);
    CHECK(std::abs(x.mean()) < 1e-12);
    CHECK(std::abs(x.squaredNorm() / x.size() - 1.0) < 1e-12);
}

TEST_CASE("degenerate inputs to the transform") {
    CHECK_THROWS_AS(log_diff_standardize(frame_of({5, 5, 5, 5})), DataError);
    CHECK_THROWS_AS(log_diff_standardize(frame_of({1, 2, 4, 8, 16})), DataError);
    CHECK_THROWS_AS(log_diff_standardize(frame_of({1, -2, 4, 8})), DataError);
}

TEST_CASE("outlier trimming") {
    const SeriesFrame f = frame_of({0.5, -6.0, 2.0, 7.5, -1.0});
    const TrimResult once = trim_outliers(f, 5.0);
    CHECK(once.clipped == 2);
    CHECK(once.frame.values(1, 0) == -5.0);
    CHECK(once.frame.values(3, 0) == 5.0);
    const TrimResult twice = trim_outliers(once.frame, 5.0);
    CHECK(twice.clipped == 0);
    CHECK((twice.frame.values - once.frame.values).norm() == 0.0);

    const TrimResult inside = trim_outliers(frame_of({1, -2, 3}), 5.0);
    CHECK(inside.clipped == 0);
    const TrimResult zero = trim_outliers(frame_of({1, -2, 3}), 0.0);
    CHECK(zero.frame.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(trim_outliers(f, -1.0), ValidationError);
}

TEST_CASE("write and reload") {
    const SeriesFrame f = frame_of({1.5, 2.5, 3.5});
    const auto path = std::filesystem::temp_directory_path() / "mssa_data_tests" / "roundtrip.csv";
    write_csv(f, path.string());
    const SeriesFrame g = load_csv(path.string(), "date", {"x"});
    CHECK(g.rows() == 3);
    CHECK(g.values(2, 0) == 3.5);
    CHECK(g.dates.back() == YearMonth{2000, 3});
}
