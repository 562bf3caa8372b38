#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "delab/analytic.hpp"
#include "delab/params.hpp"
#include "delab/wgrid.hpp"

namespace delab {

struct MinimizerConfig {
    int max_iters = 400;
    double tol_rel = 1e-9;  // stop when the relative Rayleigh decrease of an accepted step drops below this
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
    int max_backtracks = 40;
    bool positivity = true;
    double inner_tol = 1e-10;  // CG tolerance of the preconditioning solve
};

/// Least-squares fit of u0 (1 + lam^2 |x' - x0|^2)^{-d/2} to a trace.
struct ProfileFit {
    double u0 = 0.0;
    FamilyParameters family;  // lam and x0 (stored in zeta)
    double misfit = 0.0;      // relative L2 misfit
    bool degenerate = false;  // lam collapsed towards 0 (constant-looking trace)
    int iterations = 0;
};

struct GroundStateResult {
    GridField field;
    double rayleigh = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // Rayleigh quotient after every accepted step, starting with the initial value
    std::optional<ProfileFit> fitted_profile;
};

/// weighted_energy(u, ZeroExtension) / weighted_lp(u)^{2/pstar}. Throws ZeroDenominator.
double rayleigh(const GridField& u, const ProblemParams& p);

/// exp(-|x|^2) sampled on the grid.
GridField default_initial_guess(const GridSpec& spec);

/// Independent uniform (0, 1] samples from Lcg64(seed), cell by cell in index order.
GridField random_positive_field(const GridSpec& spec, std::uint64_t seed);

/// Descent on the constraint set weighted_lp = 1.
///
/// The search direction is the gradient preconditioned by the inverse of
/// apply_L, so a unit step is one step of nonlinear inverse iteration;
/// backtracking enforces sufficient decrease, which makes the recorded
/// Rayleigh sequence nonincreasing. Returns converged = false when max_iters
/// is reached. Throws ZeroDenominator if an iterate collapses to zero.
GroundStateResult minimize_rayleigh(const GridField& u0, const ProblemParams& p, const MinimizerConfig& cfg = {});

struct RescaledSolution {
    GridField field;
    double scale = 0.0;     // c with c^{pstar - 2} = rayleigh
    double residual = 0.0;  // ||L v - w_b |v|^{p-2} v|| / ||L v|| over interior cells with |x_N| > band
};

/// Euler-Lagrange rescaling of a converged minimizer to a solution. Throws NotConverged.
RescaledSolution rescale_to_solution(const GroundStateResult& r, const ProblemParams& p, double band = 0.2);

/// Values on the plane x_N ~ 0 with their x' coordinates.
struct TraceSamples {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

/// Mean of the two cell layers adjacent to x_N = 0.
TraceSamples extract_trace(const GridField& u);

/// Levenberg-Marquardt fit. Throws DegenerateTrace when no sample is positive.
ProfileFit fit_profile(const TraceSamples& trace, const ProblemParams& p);

}  // namespace delab
