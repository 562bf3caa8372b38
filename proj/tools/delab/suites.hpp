#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delab/xforms.hpp"
#include "report.hpp"

namespace delab::cli {

struct Settings {
    ProblemParams params;
    int grid = 32;
    double half_width = 8.0;
    std::uint64_t seed = 42;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite ("all" concatenates every suite, prefixing check names).
/// Throws delab::Error for parameters a suite cannot handle.
SuiteReport run_suite(const std::string& name, const Settings& s);

SuiteReport suite_exponents(const Settings& s);
SuiteReport suite_transforms(const Settings& s);
SuiteReport suite_pohozaev(const Settings& s);
SuiteReport suite_kazdan_warner(const Settings& s);
SuiteReport suite_probes(const Settings& s);

/// Worst value over the points of max(|r(h/2)| - floor, 0) / |r(h)|, the
/// residual ratio under halving with residuals already at the rounding floor
/// counted as converged. A value <= 1/3 means every point dropped at least 3x.
double worst_halving_ratio(const TransformedField& tf, const std::vector<std::vector<double>>& points, double h,
                           double floor = 1e-9);

/// Random points for residual checks: the upper half-space slab
/// |x'| components in [-1.5, 1.5], x_N in [0.3, 2] (upper = true), or the ball |x| <= 0.8.
std::vector<std::vector<double>> residual_points(int n, int count, bool upper, std::uint64_t seed);

}  // namespace delab::cli
