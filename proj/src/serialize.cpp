#include "hmmboost/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace hmmboost {

std::string format_sig9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

double round_sig9(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_sig9(x).c_str(), nullptr);
}

nlohmann::json json_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig9(x);
}

double real_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("unexpected numeric string '" + s + "'");
    }
    return j.get<double>();
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
    }
    return m;
}

nlohmann::json params_to_json(const HmmParams& p) {
    return nlohmann::json{{"states", p.num_states},
                          {"symbols", p.num_symbols},
                          {"transition", matrix_to_json(p.transition)},
                          {"emission", matrix_to_json(p.emission)},
                          {"initial", p.initial}};
}

HmmParams params_from_json(const nlohmann::json& j) {
    HmmParams p;
    p.num_states = j.at("states").get<int>();
    p.num_symbols = j.at("symbols").get<int>();
    p.transition = matrix_from_json(j.at("transition"));
    p.emission = matrix_from_json(j.at("emission"));
    p.initial = j.at("initial").get<std::vector<double>>();
    p.validate(1e-9);  // serialized text may round
    return p;
}

}  // namespace hmmboost
