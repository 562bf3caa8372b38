#include "delab/probes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "delab/error.hpp"
#include "delab/identities.hpp"
#include "delab/parallel.hpp"

namespace delab {

namespace {

struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

double ratio_of(const Extremes& e) {
    if (!(e.lo > 0.0) || !std::isfinite(e.hi)) {
        throw Error(ErrorCode::NonpositiveField, "field minimum on the ball is " + std::to_string(e.lo));
    }
    return e.hi / e.lo;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "need at least two distinct abscissae");
    return sxy / sxx;
}

}  // namespace

double harnack_ratio(const AnalyticField& u, double radius, const ProblemParams& p, int samples) {
    validate_params(p.n, p.alpha, p.s);
    if (u.dim() != 3) throw Error(ErrorCode::Unsupported, "ball sampling is implemented for N = 3");
    if (!(radius > 0.0) || samples < 2) throw Error(ErrorCode::InvalidArgument, "radius and samples must be positive");

    // Lattice vertices, so the origin and the poles on the x_N axis are sampled exactly.
    const double h = 2.0 * radius / samples;
    const auto n = static_cast<std::size_t>(samples) + 1;
    std::vector<Extremes> slabs(n);
    parallel_for(0, n, [&](std::size_t i) {
        Extremes e;
        const double x0 = -radius + static_cast<double>(i) * h;
        for (int j = 0; j <= samples; ++j) {
            const double x1 = -radius + j * h;
            for (int k = 0; k <= samples; ++k) {
                const double x2 = -radius + k * h;
                if (x0 * x0 + x1 * x1 + x2 * x2 > radius * radius * (1.0 + 1e-12)) continue;
                e.add(u({x0, x1, x2}));
            }
        }
        slabs[i] = e;
    });
    Extremes all;
    for (const auto& e : slabs) {
        if (e.lo <= e.hi) {
            all.add(e.lo);
            all.add(e.hi);
        }
    }
    const SphereQuadrature q = SphereQuadrature::for_degree(radius, 2 * samples);
    for (const auto& x : q.nodes) all.add(u(std::span<const double>(x.data(), 3)));
    return ratio_of(all);
}

double harnack_ratio(const GridField& u, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    const auto& d = u.spec.dims;
    Extremes all;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const auto x = u.spec.point(i1, i2, i3);
                if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= radius * radius) all.add(u.at(i1, i2, i3));
            }
        }
    }
    if (all.lo > all.hi) throw Error(ErrorCode::InvalidArgument, "no cell center inside the ball");
    return ratio_of(all);
}

BoundaryMinProbe boundary_min_probe(const GridField& solution) {
    const GridSpec& spec = solution.spec;
    const auto& d = spec.dims;
    Extremes ring, interior;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                (spec.on_boundary_ring(i1, i2, i3) ? ring : interior).add(solution.at(i1, i2, i3));
            }
        }
    }
    BoundaryMinProbe out;
    if (interior.lo > interior.hi) {
        out.pass = true;  // no interior cells: nothing to violate
        out.boundary_constant = ring.lo == ring.hi;
        return out;
    }
    const double scale = std::max({std::abs(ring.lo), std::abs(ring.hi), 1e-300});
    const double tol = 1e-8 * scale;  // sized for fields produced by iterative solves
    out.margin = interior.lo - ring.lo;
    out.boundary_constant = (ring.hi - ring.lo) <= tol;
    out.strict = !out.boundary_constant;
    out.pass = out.strict ? out.margin > tol : out.margin >= -tol;
    return out;
}

SingularityFit singularity_fit(const AnalyticField& u, std::span<const double> radii, const ProblemParams& p,
                               int sphere_degree) {
    if (radii.size() < 2) throw Error(ErrorCode::IllConditionedFit, "need at least two radii");
    const double dd = derive_exponents(p).decay_d;
    const auto n = static_cast<Eigen::Index>(radii.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = radii[static_cast<std::size_t>(i)];
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
        A(i, 0) = std::pow(r, -dd);
        A(i, 1) = 1.0;
        b[i] = spherical_mean(u, r, sphere_degree);
    }
    // Column scaling keeps r^{-d} and 1 comparable before the QR.
    const Eigen::VectorXd scale = A.colwise().norm().transpose();
    const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
    if (!(rdiag.minCoeff() > 1e-12 * rdiag.maxCoeff())) {
        throw Error(ErrorCode::IllConditionedFit, "design matrix is numerically rank deficient");
    }
    const Eigen::VectorXd coef = qr.solve(b).cwiseQuotient(scale);
    SingularityFit fit;
    fit.C_hat = coef[0];
    fit.b0_hat = coef[1];
    const double bn = b.norm();
    fit.residual = bn > 0.0 ? (A * coef - b).norm() / bn : (A * coef - b).norm();
    return fit;
}

double decay_exponent(const AnalyticField& u, std::span<const double> radii, int sphere_degree) {
    if (radii.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two radii");
    std::vector<double> lx, ly;
    for (double r : radii) {
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
        const double m = spherical_mean(u, r, sphere_degree);
        if (!(m > 0.0)) {
            throw Error(ErrorCode::NonpositiveSamples, "spherical mean at r = " + std::to_string(r) + " is " +
                                                           std::to_string(m));
        }
        lx.push_back(std::log(r));
        ly.push_back(std::log(m));
    }
    return least_squares_slope(lx, ly);
}

GradientBoundProbe gradient_bound_probe(const AnalyticField& u, std::span<const double> heights, int samples) {
    if (heights.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two heights");
    if (samples < 2) throw Error(ErrorCode::InvalidArgument, "samples must be at least 2");
    const int n = u.dim();
    if (n != 3) throw Error(ErrorCode::Unsupported, "disc sampling is implemented for N = 3");

    GradientBoundProbe out;
    std::vector<double> lx, ly;
    bool any_zero = false;
    for (double t : heights) {
        if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "heights must be positive");
        double best = 0.0;
        std::vector<double> g(3);
        for (int i = 0; i < samples; ++i) {
            const double a = -0.5 + i / static_cast<double>(samples - 1);
            for (int j = 0; j < samples; ++j) {
                const double b = -0.5 + j / static_cast<double>(samples - 1);
                if (a * a + b * b > 0.25 + 1e-15) continue;
                double dn = 0.0;
                if (u.has_gradient()) {
                    const std::array<double, 3> x{a, b, t};
                    u.gradient(x, g);
                    dn = g[2];
                } else {
                    const double step = 1e-4 * t;
                    dn = (u({a, b, t + step}) - u({a, b, t - step})) / (2.0 * step);
                }
                best = std::max(best, std::abs(dn));
            }
        }
        out.maxima.push_back(best);
        if (best > 0.0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(best));
        } else {
            any_zero = true;
        }
    }
    // A derivative that vanishes at some height is bounded there; slope 0.
    out.exponent = (any_zero || lx.size() < 2) ? 0.0 : least_squares_slope(lx, ly);
    out.within_bound = out.exponent >= -1.1;
    return out;
}

double inversion_radius_estimate(const AnalyticField& u, std::span<const double> b, const ProblemParams& p) {
    const int n = u.dim();
    if (static_cast<int>(b.size()) != n - 1) {
        throw Error(ErrorCode::InvalidArgument, "b must have N-1 components");
    }
    const double dd = derive_exponents(p).decay_d;
    std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
    std::vector<double> xb(b.begin(), b.end());
    xb.push_back(0.0);
    const double u0 = u(origin);
    const double ub = u(xb);
    if (!(ub > 0.0) || !(u0 > 0.0)) {
        throw Error(ErrorCode::NonpositiveValue, "u(0) = " + std::to_string(u0) + ", u(b,0) = " + std::to_string(ub));
    }
    return std::pow(u0 / ub, 1.0 / dd);
}

}  // namespace delab
