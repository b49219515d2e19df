#include "mssa/config.hpp"

#include "mssa/error.hpp"

#include <fstream>

namespace mssa {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config '" + path + "'");
    }
    try {
        return Json::parse(in, nullptr, true, true);
    } catch (const Json::exception& e) {
        throw ValidationError("config '" + path + "': " + e.what());
    }
}

Mat matrix_from_json(const Json& j, const std::string& what) {
    if (j.is_number()) {
        return Mat::Constant(1, 1, j.get<double>());
    }
    if (!j.is_array() || j.empty()) {
        throw ValidationError(what + ": expected a non-empty list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 1);
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (row.is_number() && cols == 1) {
            m(r, 0) = row.get<double>();
            continue;
        }
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ValidationError(what + ": ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!row[c].is_number()) {
                throw ValidationError(what + ": non-numeric entry");
            }
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

Vec vector_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) {
        throw ValidationError(what + ": expected a list of numbers");
    }
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ValidationError(what + ": non-numeric entry");
        }
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Json matrix_to_json(const Mat& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        out.push_back(std::move(row));
    }
    return out;
}

VarmaModel ModelConfig::build() const {
    return VarmaModel(ar, ma, intercept, NoiseCovariance(sigma));
}

ModelConfig ModelConfig::from_json(const Json& j) {
    if (!j.is_object()) {
        throw ValidationError("model: expected an object");
    }
    if (!j.contains("sigma")) {
        throw ValidationError("model: 'sigma' is required");
    }
    ModelConfig m;
    m.sigma = matrix_from_json(j.at("sigma"), "model.sigma");
    for (const char* key : {"ar", "ma"}) {
        if (!j.contains(key)) {
            continue;
        }
        const Json& list = j.at(key);
        if (!list.is_array()) {
            throw ValidationError(std::string("model.") + key + ": expected a list of matrices");
        }
        auto& target = std::string(key) == "ar" ? m.ar : m.ma;
        for (std::size_t i = 0; i < list.size(); ++i) {
            target.push_back(
                matrix_from_json(list[i], std::string("model.") + key + "[" + std::to_string(i) + "]"));
        }
    }
    m.intercept = j.contains("intercept") ? vector_from_json(j.at("intercept"), "model.intercept")
                                          : Vec::Zero(m.sigma.rows());
    return m;
}

Json ModelConfig::to_json() const {
    Json j;
    j["ar"] = Json::array();
    for (const auto& a : ar) {
        j["ar"].push_back(matrix_to_json(a));
    }
    j["ma"] = Json::array();
    for (const auto& t : ma) {
        j["ma"].push_back(matrix_to_json(t));
    }
    j["intercept"] = std::vector<double>(intercept.data(), intercept.data() + intercept.size());
    j["sigma"] = matrix_to_json(sigma);
    return j;
}

template <typename T>
T value_or(const Json& j, const std::string& key, const T& fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ValidationError("config key '" + key + "': " + e.what());
    }
}

template double value_or<double>(const Json&, const std::string&, const double&);
template int value_or<int>(const Json&, const std::string&, const int&);
template long value_or<long>(const Json&, const std::string&, const long&);
template bool value_or<bool>(const Json&, const std::string&, const bool&);
template std::string value_or<std::string>(const Json&, const std::string&, const std::string&);
template std::vector<double> value_or<std::vector<double>>(const Json&, const std::string&,
                                                           const std::vector<double>&);
template std::vector<int> value_or<std::vector<int>>(const Json&, const std::string&,
                                                     const std::vector<int>&);
template std::vector<std::string> value_or<std::vector<std::string>>(
    const Json&, const std::string&, const std::vector<std::string>&);

}  // namespace mssa
