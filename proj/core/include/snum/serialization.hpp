#pragma once

#include "snum/grid_function.hpp"
#include "snum/hilbert.hpp"
#include "snum/snumbers.hpp"
#include "snum/step_function.hpp"

#include <nlohmann/json.hpp>

namespace snum {

// Schema
//   step function: {"type": "step_function", "breakpoints": [..], "values": [..]}
//     exact ones add "exact": {"breakpoints": ["p/q", ..], "values": ["p/q", ..]}
//   grid function: {"type": "grid_function", "dim": d, "cells_per_side": N,
//                   "boundary_zero": b, "nodal_values": [..]} (row-major, last index fastest)
//   bound: {"kind": "b", "n": .., "lower": x|null, "upper": x|null,
//           "lower_exact": "p/q"?, "upper_exact": "p/q"?, "mode", "status",
//           "operator", "anchor", "witness"}; infinite ends are null.

nlohmann::json number_or_null(double x);
double number_from_json(const nlohmann::json& j, double if_null);

nlohmann::json to_json(const StepFunction<double>& f);
nlohmann::json to_json(const StepFunction<Rational>& f);
StepFunction<double> step_function_from_json(const nlohmann::json& j);
StepFunction<Rational> exact_step_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridFunction& u);
GridFunction grid_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DyadicCube& q);
nlohmann::json to_json(const SNumberBound& b);
SNumberBound bound_from_json(const nlohmann::json& j);

}  // namespace snum
