#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hmmboost/hmm.hpp"
#include "hmmboost/matrix.hpp"

namespace hmmboost {

// All reported floats are capped at 9 significant digits so that reruns
// serialize byte-identically.
std::string format_sig9(double x);

// x rounded to 9 significant digits (round-trip through format_sig9).
double round_sig9(double x);

// Finite values become rounded JSON numbers; infinities become the
// strings "inf" / "-inf" (JSON has no number for them).
nlohmann::json json_real(double x);
double real_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const HmmParams& p);
HmmParams params_from_json(const nlohmann::json& j);

}  // namespace hmmboost
