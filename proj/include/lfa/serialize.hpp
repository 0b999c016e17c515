#pragma once

#include "lfa/function.hpp"
#include "lfa/shift_invariant.hpp"
#include "lfa/weights.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace lfa {

using Json = nlohmann::ordered_json;

/// Semantic version of every report and file schema this library emits.
std::string report_schema_version();

/// 17-significant-digit float formatting used by all CSV and console output.
std::string fmt17(double x);

/// {q, p, c, char, level, [window], values: [[re, im], ...]} with coset index
/// order lexicographic in the digits, lowest position fastest.
Json function_to_json(const SampledFunction& f);
SampledFunction function_from_json(const Json& j);

Json params_to_json(const FieldParams& f);
std::shared_ptr<FieldParams> params_from_json(const Json& j);

Json ap_report_to_json(const ApReport& rep);
Json schauder_report_to_json(const SchauderReport& rep);

} // namespace lfa
