#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "delab/params.hpp"

namespace delab::cli {

enum class ToleranceMode { Abs, Rel };

struct Check {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    ToleranceMode mode = ToleranceMode::Abs;
    bool pass = false;
};

/// pass = |value - expected| <= tol (Abs) or <= tol |expected| (Rel); NaN never passes.
Check make_check(std::string name, double value, double expected, double tol, ToleranceMode mode = ToleranceMode::Abs);

struct SuiteReport {
    std::string suite;
    ProblemParams params;
    int grid = 32;
    double half_width = 8.0;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    int pass_count() const;
    int fail_count() const;
    nlohmann::ordered_json to_json() const;
};

}  // namespace delab::cli
