#pragma once

#include "mssa/processes.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mssa {

using Json = nlohmann::json;

/// Reads a JSON document; parse errors become ValidationError.
Json load_json(const std::string& path);

/// Matrix from a list of rows; a bare number is read as 1x1.
Mat matrix_from_json(const Json& j, const std::string& what);
Vec vector_from_json(const Json& j, const std::string& what);
Json matrix_to_json(const Mat& m);

/// VARMA coefficients as written in a config:
///   {"ar": [[[..],[..]], ...], "ma": [...], "intercept": [...], "sigma": [[..],[..]]}
struct ModelConfig {
    std::vector<Mat> ar;
    std::vector<Mat> ma;
    Vec intercept;
    Mat sigma;

    VarmaModel build() const;
    static ModelConfig from_json(const Json& j);
    Json to_json() const;
};

/// j[key] if present, otherwise `fallback`; type errors become ValidationError.
template <typename T>
T value_or(const Json& j, const std::string& key, const T& fallback);

extern template double value_or<double>(const Json&, const std::string&, const double&);
extern template int value_or<int>(const Json&, const std::string&, const int&);
extern template long value_or<long>(const Json&, const std::string&, const long&);
extern template bool value_or<bool>(const Json&, const std::string&, const bool&);
extern template std::string value_or<std::string>(const Json&, const std::string&, const std::string&);
extern template std::vector<double> value_or<std::vector<double>>(const Json&, const std::string&,
                                                                  const std::vector<double>&);
extern template std::vector<int> value_or<std::vector<int>>(const Json&, const std::string&,
                                                            const std::vector<int>&);
extern template std::vector<std::string> value_or<std::vector<std::string>>(
    const Json&, const std::string&, const std::vector<std::string>&);

}  // namespace mssa
