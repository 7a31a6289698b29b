#include "snum/serialization.hpp"

#include "snum/error.hpp"

#include <cmath>

namespace snum {

using nlohmann::json;

json number_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

double number_from_json(const json& j, double if_null)
{
    return j.is_null() ? if_null : j.get<double>();
}

json to_json(const StepFunction<double>& f)
{
    return json{{"type", "step_function"}, {"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

json to_json(const StepFunction<Rational>& f)
{
    json j = to_json(to_double(f));
    json eb = json::array();
    json ev = json::array();
    for (const auto& b : f.breakpoints()) eb.push_back(to_string(b));
    for (const auto& v : f.values()) ev.push_back(to_string(v));
    j["exact"] = json{{"breakpoints", eb}, {"values", ev}};
    return j;
}

StepFunction<double> step_function_from_json(const json& j)
{
    if (j.value("type", "") != "step_function") throw DomainError("json is not a step function");
    return StepFunction<double>(j.at("breakpoints").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
}

StepFunction<Rational> exact_step_function_from_json(const json& j)
{
    if (!j.contains("exact")) return to_exact(step_function_from_json(j));
    std::vector<Rational> b, v;
    for (const auto& s : j.at("exact").at("breakpoints")) b.push_back(parse_rational(s.get<std::string>()));
    for (const auto& s : j.at("exact").at("values")) v.push_back(parse_rational(s.get<std::string>()));
    return StepFunction<Rational>(std::move(b), std::move(v));
}

json to_json(const GridFunction& u)
{
    return json{{"type", "grid_function"},
                {"dim", u.dim()},
                {"cells_per_side", u.cells_per_side()},
                {"boundary_zero", u.boundary_zero()},
                {"nodal_values", u.nodal_values()}};
}

GridFunction grid_function_from_json(const json& j)
{
    if (j.value("type", "") != "grid_function") throw DomainError("json is not a grid function");
    return GridFunction(j.at("dim").get<int>(), j.at("cells_per_side").get<int>(),
                        j.at("nodal_values").get<std::vector<double>>(), j.at("boundary_zero").get<bool>());
}

json to_json(const DyadicCube& q)
{
    return json{{"level", q.level}, {"coords", q.coords}};
}

json to_json(const SNumberBound& b)
{
    json j{{"kind", std::string(1, kind_code(b.kind))},
           {"n", b.n},
           {"lower", number_or_null(b.lower)},
           {"upper", number_or_null(b.upper)},
           {"mode", to_string(b.mode)},
           {"status", to_string(b.status)},
           {"operator", b.operator_label},
           {"anchor", b.anchor},
           {"witness", b.witness}};
    if (b.lower_exact) j["lower_exact"] = to_string(*b.lower_exact);
    if (b.upper_exact) j["upper_exact"] = to_string(*b.upper_exact);
    return j;
}

SNumberBound bound_from_json(const json& j)
{
    SNumberBound b;
    const auto kind = j.at("kind").get<std::string>();
    if (kind.size() != 1) throw DomainError("bound kind must be a single letter");
    b.kind = parse_kind(kind[0]);
    b.n = j.at("n").get<std::size_t>();
    b.lower = number_from_json(j.at("lower"), -std::numeric_limits<double>::infinity());
    b.upper = number_from_json(j.at("upper"), std::numeric_limits<double>::infinity());
    if (j.contains("lower_exact")) b.lower_exact = parse_rational(j["lower_exact"].get<std::string>());
    if (j.contains("upper_exact")) b.upper_exact = parse_rational(j["upper_exact"].get<std::string>());
    b.mode = parse_mode(j.at("mode").get<std::string>());
    b.status = parse_status(j.at("status").get<std::string>());
    b.operator_label = j.at("operator").get<std::string>();
    b.anchor = j.value("anchor", "");
    b.witness = j.value("witness", json::object());
    return b;
}

}  // namespace snum
