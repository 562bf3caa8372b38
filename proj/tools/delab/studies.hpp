#pragma once

#include <string>
#include <vector>

#include "delab/params.hpp"
#include "delab/wgrid.hpp"

namespace delab::cli {

enum class Norm { L1, L2, Max };

/// "l1" (cell mean of |r|), "l2" (root mean square), "max". Throws InvalidArgument.
Norm parse_norm(const std::string& name);
const char* to_string(Norm n) noexcept;

double reduce(const std::vector<double>& r, Norm n);

/// |apply_L(|x|^{-d})| |x|^{d+2} on interior cells with 1 <= |x| <= 2 and |x_N| > 0.2.
std::vector<double> power_residuals(const GridSpec& spec, const ProblemParams& p);

/// apply_L(U) - |x_N|^b U^{p-1} on interior cells with |x_N| > band. Explicit regime only.
std::vector<double> explicit_residuals(const GridSpec& spec, const ProblemParams& p, double band = 0.2);

/// |Pohozaev residual| / largest term for U with K = 1 on B_1, quadrature from the grid size
/// (volume cells 2 grid, sphere degree grid / 4). Explicit regime only.
double pohozaev_relative_residual(int grid, const ProblemParams& p);

struct StudyRow {
    int grid = 0;
    double h = 0.0;
    double residual = 0.0;
    double order = 0.0;  // log(previous / current) / log(h_previous / h); 0 for the first row
};

/// quantity: apply-L-power | explicit-residual | pohozaev-residual. Needs >= 2 grids.
std::vector<StudyRow> convergence_study(const std::string& quantity, const std::vector<int>& grids, double half_width,
                                        const ProblemParams& p, Norm norm);

}  // namespace delab::cli
