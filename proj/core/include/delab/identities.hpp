#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "delab/analytic.hpp"
#include "delab/params.hpp"
#include "delab/wgrid.hpp"

namespace delab {

/// Product rule on the sphere of radius sigma about the origin in R^3.
///
/// The polar coordinate z = x_3 / sigma is integrated by Gauss-Legendre
/// separately on each hemisphere, so integrands with a kink across x_3 = 0
/// (|x_N|^{2a}, U) keep spectral accuracy; the azimuth uses the periodic
/// trapezoid rule.
struct SphereQuadrature {
    double radius = 1.0;
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;

    static SphereQuadrature product(double radius, int polar_per_hemisphere, int azimuth);
    /// Exact for polynomials of total degree <= degree.
    static SphereQuadrature for_degree(double radius, int degree);
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Sum of weights * f(nodes); throws NonFiniteSample on a non-finite sample.
double sphere_integral(const std::function<double(const std::array<double, 3>&)>& f, const SphereQuadrature& q);

/// Surface integral skipping nodes with |x_N| <= band. The skipped part is
/// bounded by (total weight of the skipped nodes) * max |f| over the kept nodes.
struct BandedIntegral {
    double value = 0.0;
    double excluded_bound = 0.0;
    int excluded_nodes = 0;
};
BandedIntegral sphere_integral_banded(const std::function<double(const std::array<double, 3>&)>& f,
                                      const SphereQuadrature& q, double band);

/// Mean of f over the sphere of radius r (N = 3).
double spherical_mean(const AnalyticField& f, double r, int degree = 16);

/// B = (d/2)|x_N|^{2a} u du/dn - (sigma/2)|x_N|^{2a}|grad u|^2 + sigma |x_N|^{2a} (du/dn)^2, n = x/|x|.
/// Throws PointNotOnSphere if ||x| - sigma| > 1e-9 sigma; u needs a gradient.
double boundary_density_B(const AnalyticField& u, std::span<const double> x, double sigma, const ProblemParams& p);

/// Trilinear interpolant of a grid field with centered-difference gradients
/// (one-sided on the boundary ring), interpolated the same way. Usable as
/// the u argument of boundary_density_B away from x_N = 0.
AnalyticField grid_field_adapter(const GridField& u, const ProblemParams& p);

struct PohozaevQuadrature {
    int volume_cells = 64;  // cells per axis on [-sigma, sigma]^3 (even)
    int sphere_degree = 8;

    PohozaevQuadrature refined() const { return {2 * volume_cells, 2 * sphere_degree}; }
};

struct PohozaevReport {
    double volume_term = 0.0;      // (1/p) int_{B_sigma} (x . grad K) |x_N|^b |u|^p
    double boundary_K_term = 0.0;  // (1/p) int_{dB_sigma} (x . n) K |x_N|^b |u|^p
    double boundary_B_term = 0.0;  // int_{dB_sigma} B
    double residual = 0.0;         // volume - boundary_K - boundary_B
    double excluded_bound = 0.0;   // only for banded (grid) evaluation

    double max_abs_term() const;
};

/// Evaluates both sides of the Pohozaev-type identity on B_sigma(0). N = 3.
PohozaevReport pohozaev_check(const AnalyticField& u, const AnalyticField& K, double sigma, const ProblemParams& p,
                              const PohozaevQuadrature& q = {});

/// Same identity for a grid field through grid_field_adapter, skipping the band |x_N| <= 2h on the sphere.
PohozaevReport pohozaev_check_grid(const GridField& u, const AnalyticField& K, double sigma, const ProblemParams& p,
                                   const PohozaevQuadrature& q = {});

/// Sphere integrals of B for u = |x|^{-d} + A + xi at each sigma. xi must vanish at 0
/// and be L-harmonic (caller's contract), and must carry a gradient.
std::vector<double> pohozaev_limit_probe(double A, const AnalyticField& xi, std::span<const double> sigmas,
                                         const ProblemParams& p, int sphere_degree = 16);

/// The limit -1/2 A d^2 int_{dB_1} |x_N|^{2a} = -1/2 A d^2 * 4 pi / (2a + 1)  (N = 3).
double pohozaev_limit_value(double A, const ProblemParams& p);

struct KazdanWarnerQuadrature {
    int cells = 64;
    double half_width = 8.0;
};

struct KazdanWarnerResult {
    double value = 0.0;
    double quadrature_error = 0.0;  // Richardson estimate from the half-resolution grid
    double tail_bound = 0.0;        // power-law estimate of the mass outside the box
    bool nonexistence = false;      // |value| > 10 quadrature_error + tail_bound
};

/// int (x . grad K) |x_N|^b |u|^p over the truncated box.
KazdanWarnerResult kazdan_warner_radial(const AnalyticField& u, const AnalyticField& K, const ProblemParams& p,
                                        const KazdanWarnerQuadrature& q = {});

/// int (dK/dx_axis) |x_N|^b |u|^p over the truncated box; axis is 0-based and must be
/// tangential (axis < N-1), else AxisOutOfRange.
KazdanWarnerResult kazdan_warner_translation(const AnalyticField& u, const AnalyticField& K, int axis,
                                             const ProblemParams& p, const KazdanWarnerQuadrature& q = {});

}  // namespace delab
