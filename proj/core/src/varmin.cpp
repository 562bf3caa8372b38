#include "delab/varmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "delab/error.hpp"
#include "delab/parallel.hpp"
#include "delab/random.hpp"

namespace delab {

namespace {

// |u|^{p-2} u scaled by the per-layer weights m (the gradient of weighted_lp divided by p).
GridField weighted_power(const GridField& u, const std::vector<double>& m, double pstar) {
    GridField out(u.spec);
    const auto& d = u.spec.dims;
    parallel_for(0, static_cast<std::size_t>(d[0]), [&](std::size_t i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const double v = u.at(static_cast<int>(i1), i2, i3);
                const double a = std::abs(v);
                out.at(static_cast<int>(i1), i2, i3) =
                    a == 0.0 ? 0.0 : m[static_cast<std::size_t>(i3)] * std::pow(a, pstar - 2.0) * v;
            }
        }
    });
    return out;
}

double checked_lp(const GridField& u, const ProblemParams& p) {
    const double g = weighted_lp(u, p);
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw Error(ErrorCode::ZeroDenominator, "weighted L^p norm is " + std::to_string(g));
    }
    return g;
}

void normalize(GridField& u, const ProblemParams& p, double pstar) {
    const double c = std::pow(checked_lp(u, p), -1.0 / pstar);
    for (double& v : u.values) v *= c;
}

}  // namespace

double rayleigh(const GridField& u, const ProblemParams& p) {
    const double pstar = derive_exponents(p).pstar;
    const double g = checked_lp(u, p);
    return weighted_energy(u, p, BoundaryClosure::ZeroExtension) / std::pow(g, 2.0 / pstar);
}

GridField default_initial_guess(const GridSpec& spec) {
    GridField u(spec);
    const auto& d = spec.dims;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const auto x = spec.point(i1, i2, i3);
                u.at(i1, i2, i3) = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
            }
        }
    }
    return u;
}

GridField random_positive_field(const GridSpec& spec, std::uint64_t seed) {
    GridField u(spec);
    Lcg64 rng(seed);
    for (double& v : u.values) v = 1.0 - rng.uniform();
    return u;
}

GroundStateResult minimize_rayleigh(const GridField& u0, const ProblemParams& p, const MinimizerConfig& cfg) {
    if (!(cfg.tol_rel > 0.0) || !(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.initial_step > 0.0) ||
        cfg.max_iters < 0) {
        throw Error(ErrorCode::InvalidArgument, "minimizer configuration out of range");
    }
    const DerivedExponents e = derive_exponents(p);
    const double pstar = e.pstar;
    const GridSpec& spec = u0.spec;
    const double vol = spec.cell_volume();
    const std::vector<double> m = lp_cell_weights(spec, p);

    GridField u = u0;
    normalize(u, p, pstar);
    double R = weighted_energy(u, p, BoundaryClosure::ZeroExtension);

    GroundStateResult result;
    result.history.push_back(R);
    GridField z_prev(spec);
    bool have_prev = false;

    int it = 0;
    while (it < cfg.max_iters) {
        // On weighted_lp = 1: grad R = 2 vol L u - 2 R m |u|^{p-2} u.
        // Preconditioned by (2 vol L)^{-1}: D = u - (R / vol) z with L z = m |u|^{p-2} u.
        const GridField rhs = weighted_power(u, m, pstar);
        const DirichletSolveResult solve =
            solve_zero_extension(rhs, p, cfg.inner_tol, have_prev ? &z_prev : nullptr);
        z_prev = solve.solution;
        have_prev = true;

        const GridField Lu = apply_L(u, p);
        GridField D(spec);
        GridField grad(spec);
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            D.values[i] = u.values[i] - (R / vol) * z_prev.values[i];
            grad.values[i] = 2.0 * vol * Lu.values[i] - 2.0 * R * rhs.values[i];
        }
        const double slope = grid_dot(grad, D);
        if (!(slope > 0.0)) {
            result.converged = true;
            break;
        }

        double t = cfg.initial_step;
        bool accepted = false;
        GridField trial(spec);
        double R_trial = R;
        for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
            for (std::size_t i = 0; i < u.values.size(); ++i) {
                double v = u.values[i] - t * D.values[i];
                if (cfg.positivity && v < 0.0) v = 0.0;
                trial.values[i] = v;
            }
            normalize(trial, p, pstar);
            R_trial = weighted_energy(trial, p, BoundaryClosure::ZeroExtension);
            if (R_trial <= R - cfg.sufficient_decrease * t * slope) {
                accepted = true;
                break;
            }
            t *= cfg.shrink;
        }
        if (!accepted) {
            // No representable decrease along the direction: stationary to rounding.
            result.converged = true;
            break;
        }
        ++it;
        const double decrease = (R - R_trial) / R;
        u = std::move(trial);
        R = R_trial;
        result.history.push_back(R);
        if (decrease < cfg.tol_rel) {
            result.converged = true;
            break;
        }
    }

    result.field = std::move(u);
    result.rayleigh = R;
    result.iterations = it;
    try {
        result.fitted_profile = fit_profile(extract_trace(result.field), p);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateTrace) throw;
    }
    return result;
}

RescaledSolution rescale_to_solution(const GroundStateResult& r, const ProblemParams& p, double band) {
    if (!r.converged) {
        throw Error(ErrorCode::NotConverged, "minimizer did not converge");
    }
    if (!(r.rayleigh > 0.0)) {
        throw Error(ErrorCode::NotConverged, "nonpositive Rayleigh quotient");
    }
    const double pstar = derive_exponents(p).pstar;
    const GridSpec& spec = r.field.spec;
    const double vol = spec.cell_volume();
    const std::vector<double> m = lp_cell_weights(spec, p);

    RescaledSolution out;
    out.scale = std::pow(r.rayleigh, 1.0 / (pstar - 2.0));
    out.field = r.field;
    for (double& v : out.field.values) v *= out.scale;

    const GridField Lv = apply_L(out.field, p);
    const GridField nl = weighted_power(out.field, m, pstar);
    const auto& d = spec.dims;
    double num = 0.0;
    double den = 0.0;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                if (spec.on_boundary_ring(i1, i2, i3) || std::abs(spec.center(2, i3)) <= band) continue;
                const double lv = Lv.at(i1, i2, i3);
                const double diff = lv - nl.at(i1, i2, i3) / vol;
                num += diff * diff;
                den += lv * lv;
            }
        }
    }
    out.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return out;
}

TraceSamples extract_trace(const GridField& u) {
    const GridSpec& spec = u.spec;
    const auto& d = spec.dims;
    const int lo = d[2] / 2 - 1;
    const int hi = d[2] / 2;
    TraceSamples t;
    t.points.reserve(static_cast<std::size_t>(d[0]) * static_cast<std::size_t>(d[1]));
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            t.points.push_back({spec.center(0, i1), spec.center(1, i2)});
            t.values.push_back(0.5 * (u.at(i1, i2, lo) + u.at(i1, i2, hi)));
        }
    }
    return t;
}

ProfileFit fit_profile(const TraceSamples& trace, const ProblemParams& p) {
    const std::size_t n = trace.values.size();
    if (n == 0 || trace.points.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "trace points and values differ in length");
    }
    const std::size_t dim = trace.points[0].size();
    const double dd = derive_exponents(p).decay_d;

    std::size_t imax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (trace.values[i] > trace.values[imax]) imax = i;
    }
    if (!(trace.values[imax] > 0.0)) {
        throw Error(ErrorCode::DegenerateTrace, "trace has no positive sample");
    }

    // Parameters: u0, log lam, x0[0..dim).
    const std::size_t np = 2 + dim;
    Eigen::VectorXd q(static_cast<Eigen::Index>(np));
    q[0] = trace.values[imax];
    for (std::size_t k = 0; k < dim; ++k) q[static_cast<Eigen::Index>(2 + k)] = trace.points[imax][k];
    {
        // Width from the sample whose value is closest to half the peak.
        const double half = 0.5 * trace.values[imax];
        double best = std::numeric_limits<double>::infinity();
        double r_half = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double dx = trace.points[i][k] - trace.points[imax][k];
                r2 += dx * dx;
            }
            const double gap = std::abs(trace.values[i] - half);
            if (r2 > 0.0 && gap < best) {
                best = gap;
                r_half = std::sqrt(r2);
            }
        }
        const double lam0 = r_half > 0.0 ? std::sqrt(std::pow(2.0, 2.0 / dd) - 1.0) / r_half : 1.0;
        q[1] = std::log(lam0);
    }

    double data_norm2 = 0.0;
    for (double v : trace.values) data_norm2 += v * v;

    auto residuals = [&](const Eigen::VectorXd& par, Eigen::VectorXd& res, Eigen::MatrixXd* jac) {
        const double u0 = par[0];
        const double lam = std::exp(par[1]);
        res.resize(static_cast<Eigen::Index>(n));
        if (jac) jac->resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(np));
        for (std::size_t i = 0; i < n; ++i) {
            double r2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double dx = trace.points[i][k] - par[static_cast<Eigen::Index>(2 + k)];
                r2 += dx * dx;
            }
            const double base = 1.0 + lam * lam * r2;
            const double shape = std::pow(base, -0.5 * dd);
            const auto ii = static_cast<Eigen::Index>(i);
            res[ii] = u0 * shape - trace.values[i];
            if (jac) {
                const double dmodel_dbase = -0.5 * dd * u0 * shape / base;
                (*jac)(ii, 0) = shape;
                (*jac)(ii, 1) = dmodel_dbase * 2.0 * lam * lam * r2;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double dx = trace.points[i][k] - par[static_cast<Eigen::Index>(2 + k)];
                    (*jac)(ii, static_cast<Eigen::Index>(2 + k)) = dmodel_dbase * lam * lam * (-2.0 * dx);
                }
            }
        }
    };

    Eigen::VectorXd res;
    Eigen::MatrixXd J;
    residuals(q, res, &J);
    double cost = res.squaredNorm();
    double mu = 1e-3;
    int iters = 0;
    bool done = false;
    for (; iters < 500 && !done; ++iters) {
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * res;
        if (g.lpNorm<Eigen::Infinity>() <= 1e-15 * std::max(1.0, data_norm2)) break;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd A = JtJ;
            A.diagonal() += mu * JtJ.diagonal().cwiseMax(1e-12);
            const Eigen::VectorXd step = A.ldlt().solve(-g);
            const Eigen::VectorXd trial = q + step;
            Eigen::VectorXd r_trial;
            residuals(trial, r_trial, nullptr);
            const double c_trial = r_trial.squaredNorm();
            if (std::isfinite(c_trial) && c_trial < cost) {
                const double rel_change = (cost - c_trial) / std::max(cost, 1e-300);
                q = trial;
                cost = c_trial;
                mu = std::max(mu * 0.3, 1e-12);
                improved = true;
                residuals(q, res, &J);
                done = rel_change < 1e-14 || step.norm() < 1e-14 * (1.0 + q.norm());
                break;
            }
            mu *= 10.0;
        }
        if (!improved) break;
        if (q[1] < -30.0) break;  // lam underflowing: constant-looking trace
    }

    ProfileFit fit;
    fit.u0 = q[0];
    fit.family.lam = std::exp(q[1]);
    fit.family.zeta.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) fit.family.zeta[k] = q[static_cast<Eigen::Index>(2 + k)];
    fit.misfit = data_norm2 > 0.0 ? std::sqrt(cost / data_norm2) : 0.0;
    fit.iterations = iters;

    double extent = 0.0;
    for (const auto& pt : trace.points) {
        double r2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double dx = pt[k] - fit.family.zeta[k];
            r2 += dx * dx;
        }
        extent = std::max(extent, std::sqrt(r2));
    }
    fit.degenerate = fit.family.lam * extent < 1e-3;
    return fit;
}

}  // namespace delab
