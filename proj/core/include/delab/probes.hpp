#pragma once

#include <span>
#include <vector>

#include "delab/analytic.hpp"
#include "delab/params.hpp"
#include "delab/wgrid.hpp"

namespace delab {

/// sup / inf of u over the closed ball B_radius(0): vertices of the
/// (samples+1)^3 lattice on the enclosing cube that fall inside the ball, plus
/// the nodes of a fine quadrature on the bounding sphere. Throws NonpositiveField.
double harnack_ratio(const AnalyticField& u, double radius, const ProblemParams& p, int samples = 64);

/// Same over the grid cells whose centers lie in the ball.
double harnack_ratio(const GridField& u, double radius);

struct BoundaryMinProbe {
    bool pass = false;
    double margin = 0.0;           // interior min - boundary-ring min
    bool boundary_constant = false;
    bool strict = false;           // margin > 0 was demanded (non-constant ring data)
};

/// Weak and strong minimum principle checks on a field whose boundary ring is
/// the data and whose interior is discretely L-harmonic.
BoundaryMinProbe boundary_min_probe(const GridField& solution);

struct SingularityFit {
    double C_hat = 0.0;
    double b0_hat = 0.0;
    double residual = 0.0;  // relative RMS misfit of the spherical means
};

/// Least squares of spherical means m(r) against {r^{-d}, 1} (N = 3).
/// Throws IllConditionedFit for fewer than two radii or a rank-deficient design.
SingularityFit singularity_fit(const AnalyticField& u, std::span<const double> radii, const ProblemParams& p,
                               int sphere_degree = 16);

/// Least-squares slope of log m(r) against log r. Throws NonpositiveSamples.
double decay_exponent(const AnalyticField& u, std::span<const double> radii, int sphere_degree = 16);

struct GradientBoundProbe {
    double exponent = 0.0;         // fitted slope of log max|du/dx_N| against log t
    bool within_bound = false;     // exponent >= -1 - 0.1
    std::vector<double> maxima;    // max over |x'| <= 1/2 at each t
};

/// Samples du/dx_N on a samples x samples grid of the disc |x'| <= 1/2 at
/// each height t. Uses u's gradient when present, else centered differences
/// with step 1e-4 t.
GradientBoundProbe gradient_bound_probe(const AnalyticField& u, std::span<const double> heights, int samples = 33);

/// (u(0) / u(b, 0))^{1/d}. Throws NonpositiveValue.
double inversion_radius_estimate(const AnalyticField& u, std::span<const double> b, const ProblemParams& p);

}  // namespace delab
