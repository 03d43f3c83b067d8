#pragma once

#include <string>

#include <json.hpp>

#include "whitney/approximant.hpp"

namespace whitney {

using Json = nlohmann::json;

// Non-finite doubles are written as the strings "inf", "-inf", "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

Json approximant_to_json(const Approximant& a);
// Rebuilds the evaluators from the stored problem texts, rings and per-stage constants.
Approximant approximant_from_json(const Json& j);

void save_approximant(const Approximant& a, const std::string& path);
Approximant load_approximant(const std::string& path);

}  // namespace whitney
