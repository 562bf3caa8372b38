#include "report.hpp"

#include <cmath>

namespace delab::cli {

Check make_check(std::string name, double value, double expected, double tol, ToleranceMode mode) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.expected = expected;
    c.tol = tol;
    c.mode = mode;
    const double bound = mode == ToleranceMode::Abs ? tol : tol * std::abs(expected);
    c.pass = std::abs(value - expected) <= bound;
    return c;
}

int SuiteReport::pass_count() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
}

int SuiteReport::fail_count() const { return static_cast<int>(checks.size()) - pass_count(); }

namespace {

// JSON has no NaN or infinity; those become null.
nlohmann::ordered_json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

nlohmann::ordered_json SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["params"] = {{"n", params.n}, {"alpha", params.alpha}, {"s", params.s}};
    j["grid"] = {{"dims", {grid, grid, grid}}, {"L", half_width}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = number(c.value);
        e["expected"] = number(c.expected);
        e["tol"] = number(c.tol);
        e["mode"] = c.mode == ToleranceMode::Abs ? "abs" : "rel";
        e["pass"] = c.pass;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["pass_count"] = pass_count();
    j["fail_count"] = fail_count();
    return j;
}

}  // namespace delab::cli
