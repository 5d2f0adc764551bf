#pragma once

#include <string>

#include "ebr/density_operator.hpp"
#include "json.hpp"

namespace ebr {

/// {"dim": d, "basis": [...], "matrix": [[[re, im], ...], ...], "trace_weight": w}
/// "basis" is emitted for two-qubit states only. Doubles are written in
/// shortest round-trip form, so parse(dump(x)) reproduces x bit for bit.
nlohmann::json to_json(const DensityOperator &rho);
DensityOperator density_from_json(const nlohmann::json &j);

/// 17 significant digits, the CSV float format.
std::string format_double(double x);
/// Shortest round-trip form, for console text.
std::string format_shortest(double x);

}  // namespace ebr
