#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "delab/analytic.hpp"
#include "delab/params.hpp"

namespace delab {

/// Cell-centered tensor grid on [-L, L]^3. Gridded operators are three-dimensional.
///
/// Centers sit at x_k = -L + (k + 1/2) h with h = 2L / dims per axis. Dims are
/// required to be even so that no center lies on x_N = 0 or at the origin.
struct GridSpec {
    std::array<int, 3> dims{32, 32, 32};
    double half_width = 8.0;

    /// Validates dims (even, >= 2) and L > 0; throws InvalidArgument.
    static GridSpec make(std::array<int, 3> dims, double half_width);
    static GridSpec cube(int n, double half_width) { return make({n, n, n}, half_width); }

    double spacing(int axis) const { return 2.0 * half_width / dims[static_cast<std::size_t>(axis)]; }
    double center(int axis, int k) const { return -half_width + (k + 0.5) * spacing(axis); }
    double cell_volume() const { return spacing(0) * spacing(1) * spacing(2); }
    std::size_t size() const {
        return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
               static_cast<std::size_t>(dims[2]);
    }
    /// Flat index with i3 fastest.
    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * static_cast<std::size_t>(dims[1]) + static_cast<std::size_t>(i2)) *
                   static_cast<std::size_t>(dims[2]) +
               static_cast<std::size_t>(i3);
    }
    std::array<double, 3> point(int i1, int i2, int i3) const {
        return {center(0, i1), center(1, i2), center(2, i3)};
    }
    bool on_boundary_ring(int i1, int i2, int i3) const {
        return i1 == 0 || i2 == 0 || i3 == 0 || i1 == dims[0] - 1 || i2 == dims[1] - 1 || i3 == dims[2] - 1;
    }

    bool operator==(const GridSpec&) const = default;
};

/// Cell-centered samples; values[spec.index(i1, i2, i3)].
struct GridField {
    GridSpec spec;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(const GridSpec& s, double fill = 0.0) : spec(s), values(s.size(), fill) {}
    GridField(const GridSpec& s, std::vector<double> v);

    double& at(int i1, int i2, int i3) { return values[spec.index(i1, i2, i3)]; }
    double at(int i1, int i2, int i3) const { return values[spec.index(i1, i2, i3)]; }
};

/// Face weights of |x_N|^{2 alpha}.
///
/// normal[f], f = 0..n3, belongs to the face between x_N-centers f-1 and f
/// (f = 0 and f = n3 are the faces to the zero ghost layer) and holds the
/// mean of |t|^{2 alpha} over the segment joining the two centers, integrated
/// in closed form. tangent[k] is the center value |x_N|^{2 alpha} used on faces
/// normal to x_1 and x_2 in layer k.
struct FaceWeights {
    std::vector<double> normal;
    std::vector<double> tangent;
};

FaceWeights face_weights(const GridSpec& spec, const ProblemParams& p);

/// Closed-form integral of |t|^e over [a, b]; requires e > -1.
double power_weight_integral(double a, double b, double e);

/// How the energy treats the box boundary.
enum class BoundaryClosure {
    /// Approximates the integral over the box: interior faces plus the two
    /// half cells at each end of every grid line, using the gradient of the
    /// nearest interior face.
    Box,
    /// Field extended by zero outside the box (the Dirichlet form of apply_L):
    /// weighted_energy(u) = <apply_L(u), u> * cell volume exactly.
    ZeroExtension,
};

/// Throws DomainMismatch if f is not three-dimensional or a center leaves f's domain.
GridField sample(const AnalyticField& f, const GridSpec& spec);

/// Discrete -div(|x_N|^{2 alpha} grad u) in flux form with zero ghost values.
GridField apply_L(const GridField& u, const ProblemParams& p);

/// Discrete integral of |x_N|^{2 alpha} |grad u|^2.
double weighted_energy(const GridField& u, const ProblemParams& p,
                       BoundaryClosure closure = BoundaryClosure::Box);

/// Per-layer integrals of |t|^{weight_b} over each cell's x_N extent, times the
/// x_1 x_2 cell area. Throws WeightNotIntegrable if weight_b <= -1.
std::vector<double> lp_cell_weights(const GridSpec& spec, const ProblemParams& p);

/// Integral of |x_N|^{weight_b} |u|^{pstar}, weight integrated exactly per cell.
double weighted_lp(const GridField& u, const ProblemParams& p);

/// 1/2 weighted_energy - 1/pstar weighted_lp.
double energy_J(const GridField& u, const ProblemParams& p, BoundaryClosure closure = BoundaryClosure::Box);

/// Sum over cells of f(center) times the exact integral of |x_N|^exponent over the cell.
double weighted_cell_sum(const GridSpec& spec, double exponent,
                         const std::function<double(const std::array<double, 3>&)>& f);

/// Plain grid inner product sum u_i v_i (no volume factor).
double grid_dot(const GridField& u, const GridField& v);

struct DirichletSolveResult {
    GridField solution;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solves apply_L(u) = f on interior cells with the one-cell boundary ring held
/// at the ring values of g, by Jacobi-preconditioned conjugate gradients.
/// Iteration cap 10 sqrt(total cells); throws NoConvergence when reached.
DirichletSolveResult solve_dirichlet(const GridField& g, const GridField& f, const ProblemParams& p, double tol);

/// Solves apply_L(u) = f on every cell (zero ghost layer outside the box), the
/// operator whose quadratic form is the ZeroExtension energy. Same preconditioner
/// and iteration cap as solve_dirichlet; `initial` warm-starts the iteration.
DirichletSolveResult solve_zero_extension(const GridField& f, const ProblemParams& p, double tol,
                                          const GridField* initial = nullptr);

}  // namespace delab
