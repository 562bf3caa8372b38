#include "delab/wgrid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "delab/error.hpp"
#include "delab/parallel.hpp"

namespace delab {

GridSpec GridSpec::make(std::array<int, 3> dims, double half_width) {
    for (int d : dims) {
        if (d < 2 || d % 2 != 0) {
            throw Error(ErrorCode::InvalidArgument, "grid dims must be even and >= 2, got " + std::to_string(d));
        }
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw Error(ErrorCode::InvalidArgument, "half width must be positive");
    }
    GridSpec s;
    s.dims = dims;
    s.half_width = half_width;
    return s;
}

GridField::GridField(const GridSpec& s, std::vector<double> v) : spec(s), values(std::move(v)) {
    if (values.size() != spec.size()) {
        throw Error(ErrorCode::InvalidArgument, "value count does not match grid dims");
    }
}

double power_weight_integral(double a, double b, double e) {
    if (!(e > -1.0)) {
        throw Error(ErrorCode::WeightNotIntegrable, "exponent " + std::to_string(e) + " <= -1");
    }
    auto prim = [e](double t) {
        const double m = std::pow(std::abs(t), e + 1.0) / (e + 1.0);
        return t < 0.0 ? -m : m;
    };
    return prim(b) - prim(a);
}

FaceWeights face_weights(const GridSpec& spec, const ProblemParams& p) {
    const int n3 = spec.dims[2];
    const double h = spec.spacing(2);
    const double a2 = 2.0 * p.alpha;
    FaceWeights w;
    w.normal.resize(static_cast<std::size_t>(n3 + 1));
    w.tangent.resize(static_cast<std::size_t>(n3));
    for (int f = 0; f <= n3; ++f) {
        const double lo = spec.center(2, f - 1);
        const double hi = spec.center(2, f);
        w.normal[static_cast<std::size_t>(f)] = power_weight_integral(lo, hi, a2) / h;
    }
    for (int k = 0; k < n3; ++k) {
        w.tangent[static_cast<std::size_t>(k)] = std::pow(std::abs(spec.center(2, k)), a2);
    }
    return w;
}

GridField sample(const AnalyticField& f, const GridSpec& spec) {
    if (f.dim() != 3) {
        throw Error(ErrorCode::DomainMismatch, "gridded sampling needs a three-dimensional field");
    }
    GridField out(spec);
    const auto& d = spec.dims;
    parallel_for(0, static_cast<std::size_t>(d[0]), [&](std::size_t i1) {
        std::array<double, 3> x{};
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                x = spec.point(static_cast<int>(i1), i2, i3);
                if (!f.contains(x)) {
                    throw Error(ErrorCode::DomainMismatch,
                                std::string("grid center outside field domain ") + to_string(f.domain()));
                }
                out.at(static_cast<int>(i1), i2, i3) = f(x);
            }
        }
    });
    return out;
}

GridField apply_L(const GridField& u, const ProblemParams& p) {
    const auto& spec = u.spec;
    const auto& d = spec.dims;
    const FaceWeights w = face_weights(spec, p);
    const double ih0 = 1.0 / (spec.spacing(0) * spec.spacing(0));
    const double ih1 = 1.0 / (spec.spacing(1) * spec.spacing(1));
    const double ih2 = 1.0 / (spec.spacing(2) * spec.spacing(2));
    GridField out(spec);
    parallel_for(0, static_cast<std::size_t>(d[0]), [&](std::size_t i1u) {
        const int i1 = static_cast<int>(i1u);
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const double c = u.at(i1, i2, i3);
                const double wt = w.tangent[static_cast<std::size_t>(i3)];
                const double x0m = i1 > 0 ? u.at(i1 - 1, i2, i3) : 0.0;
                const double x0p = i1 + 1 < d[0] ? u.at(i1 + 1, i2, i3) : 0.0;
                const double x1m = i2 > 0 ? u.at(i1, i2 - 1, i3) : 0.0;
                const double x1p = i2 + 1 < d[1] ? u.at(i1, i2 + 1, i3) : 0.0;
                const double x2m = i3 > 0 ? u.at(i1, i2, i3 - 1) : 0.0;
                const double x2p = i3 + 1 < d[2] ? u.at(i1, i2, i3 + 1) : 0.0;
                const double wm = w.normal[static_cast<std::size_t>(i3)];
                const double wp = w.normal[static_cast<std::size_t>(i3 + 1)];
                out.at(i1, i2, i3) = wt * ih0 * ((c - x0m) + (c - x0p)) + wt * ih1 * ((c - x1m) + (c - x1p)) +
                                     ih2 * (wm * (c - x2m) + wp * (c - x2p));
            }
        }
    });
    return out;
}

double weighted_energy(const GridField& u, const ProblemParams& p, BoundaryClosure closure) {
    const auto& spec = u.spec;
    const auto& d = spec.dims;
    const FaceWeights w = face_weights(spec, p);
    const double h0 = spec.spacing(0);
    const double h1 = spec.spacing(1);
    const double h2 = spec.spacing(2);
    const double vol = spec.cell_volume();
    const double a2 = 2.0 * p.alpha;
    const double L = spec.half_width;
    // integrals of |t|^{2a} over the end half cells in x_N, divided by h2 so they act like face weights
    const double end_lo = power_weight_integral(-L, spec.center(2, 0), a2) / h2;
    const double end_hi = power_weight_integral(spec.center(2, d[2] - 1), L, a2) / h2;
    const bool box = closure == BoundaryClosure::Box;

    return ordered_sum(static_cast<std::size_t>(d[0]), [&](std::size_t i1u) {
        const int i1 = static_cast<int>(i1u);
        double acc = 0.0;
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const double c = u.at(i1, i2, i3);
                const double wt = w.tangent[static_cast<std::size_t>(i3)];
                // x_1 faces owned by slab i1: the face to i1 + 1 (or the ghost face at the top end)
                if (i1 + 1 < d[0]) {
                    const double g = u.at(i1 + 1, i2, i3) - c;
                    acc += wt * g * g / (h0 * h0);
                }
                // x_2 faces
                if (i2 + 1 < d[1]) {
                    const double g = u.at(i1, i2 + 1, i3) - c;
                    acc += wt * g * g / (h1 * h1);
                }
                // x_N faces
                if (i3 + 1 < d[2]) {
                    const double g = u.at(i1, i2, i3 + 1) - c;
                    acc += w.normal[static_cast<std::size_t>(i3 + 1)] * g * g / (h2 * h2);
                }
                if (box) {
                    if (i1 == 0 || i1 == d[0] - 1) {
                        const double g = (i1 == 0) ? u.at(1, i2, i3) - c : c - u.at(i1 - 1, i2, i3);
                        acc += 0.5 * wt * g * g / (h0 * h0);
                    }
                    if (i2 == 0 || i2 == d[1] - 1) {
                        const double g = (i2 == 0) ? u.at(i1, 1, i3) - c : c - u.at(i1, i2 - 1, i3);
                        acc += 0.5 * wt * g * g / (h1 * h1);
                    }
                    if (i3 == 0) {
                        const double g = u.at(i1, i2, 1) - c;
                        acc += end_lo * g * g / (h2 * h2);
                    }
                    if (i3 == d[2] - 1) {
                        const double g = c - u.at(i1, i2, i3 - 1);
                        acc += end_hi * g * g / (h2 * h2);
                    }
                } else {
                    if (i1 == 0) acc += wt * c * c / (h0 * h0);
                    if (i1 == d[0] - 1) acc += wt * c * c / (h0 * h0);
                    if (i2 == 0) acc += wt * c * c / (h1 * h1);
                    if (i2 == d[1] - 1) acc += wt * c * c / (h1 * h1);
                    if (i3 == 0) acc += w.normal[0] * c * c / (h2 * h2);
                    if (i3 == d[2] - 1) acc += w.normal[static_cast<std::size_t>(d[2])] * c * c / (h2 * h2);
                }
            }
        }
        return acc * vol;
    });
}

std::vector<double> lp_cell_weights(const GridSpec& spec, const ProblemParams& p) {
    const double b = derive_exponents(p).weight_b;
    if (!(b > -1.0)) {
        throw Error(ErrorCode::WeightNotIntegrable, "weight_b = " + std::to_string(b));
    }
    const double h2 = spec.spacing(2);
    const double area = spec.spacing(0) * spec.spacing(1);
    std::vector<double> m(static_cast<std::size_t>(spec.dims[2]));
    for (int k = 0; k < spec.dims[2]; ++k) {
        const double c = spec.center(2, k);
        m[static_cast<std::size_t>(k)] = power_weight_integral(c - 0.5 * h2, c + 0.5 * h2, b) * area;
    }
    return m;
}

double weighted_lp(const GridField& u, const ProblemParams& p) {
    const auto& d = u.spec.dims;
    const std::vector<double> m = lp_cell_weights(u.spec, p);
    const double pstar = derive_exponents(p).pstar;
    return ordered_sum(static_cast<std::size_t>(d[0]), [&](std::size_t i1) {
        double acc = 0.0;
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const double v = std::abs(u.at(static_cast<int>(i1), i2, i3));
                if (v != 0.0) acc += m[static_cast<std::size_t>(i3)] * std::pow(v, pstar);
            }
        }
        return acc;
    });
}

double energy_J(const GridField& u, const ProblemParams& p, BoundaryClosure closure) {
    const double pstar = derive_exponents(p).pstar;
    return 0.5 * weighted_energy(u, p, closure) - weighted_lp(u, p) / pstar;
}

double weighted_cell_sum(const GridSpec& spec, double exponent,
                         const std::function<double(const std::array<double, 3>&)>& f) {
    const auto& d = spec.dims;
    const double h2 = spec.spacing(2);
    const double area = spec.spacing(0) * spec.spacing(1);
    std::vector<double> m(static_cast<std::size_t>(d[2]));
    for (int k = 0; k < d[2]; ++k) {
        const double c = spec.center(2, k);
        m[static_cast<std::size_t>(k)] = power_weight_integral(c - 0.5 * h2, c + 0.5 * h2, exponent) * area;
    }
    return ordered_sum(static_cast<std::size_t>(d[0]), [&](std::size_t i1) {
        double acc = 0.0;
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                acc += m[static_cast<std::size_t>(i3)] * f(spec.point(static_cast<int>(i1), i2, i3));
            }
        }
        return acc;
    });
}

double grid_dot(const GridField& u, const GridField& v) {
    const auto& d = u.spec.dims;
    const std::size_t slab = static_cast<std::size_t>(d[1]) * static_cast<std::size_t>(d[2]);
    return ordered_sum(static_cast<std::size_t>(d[0]), [&](std::size_t i1) {
        double acc = 0.0;
        const std::size_t base = i1 * slab;
        for (std::size_t j = 0; j < slab; ++j) acc += u.values[base + j] * v.values[base + j];
        return acc;
    });
}

namespace {

GridField interior_masked(const GridField& u) {
    GridField out = u;
    const auto& d = u.spec.dims;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                if (u.spec.on_boundary_ring(i1, i2, i3)) out.at(i1, i2, i3) = 0.0;
            }
        }
    }
    return out;
}

}  // namespace

namespace {

GridField jacobi_inverse_diagonal(const GridSpec& spec, const ProblemParams& p, bool interior_only) {
    const auto& d = spec.dims;
    const FaceWeights w = face_weights(spec, p);
    const double ih0 = 1.0 / (spec.spacing(0) * spec.spacing(0));
    const double ih1 = 1.0 / (spec.spacing(1) * spec.spacing(1));
    const double ih2 = 1.0 / (spec.spacing(2) * spec.spacing(2));
    GridField inv_diag(spec);
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                if (interior_only && spec.on_boundary_ring(i1, i2, i3)) continue;
                const double wt = w.tangent[static_cast<std::size_t>(i3)];
                const double diag = 2.0 * wt * (ih0 + ih1) +
                                    ih2 * (w.normal[static_cast<std::size_t>(i3)] +
                                           w.normal[static_cast<std::size_t>(i3 + 1)]);
                inv_diag.at(i1, i2, i3) = 1.0 / diag;
            }
        }
    }
    return inv_diag;
}

// Preconditioned CG on A x = b starting from x. Returns (iterations, relative residual).
template <class ApplyA>
std::pair<int, double> pcg(const ApplyA& apply_A, const GridField& inv_diag, const GridField& b, GridField& x,
                           double tol, int cap) {
    const double bnorm = std::sqrt(grid_dot(b, b));
    if (bnorm == 0.0) {
        std::fill(x.values.begin(), x.values.end(), 0.0);
        return {0, 0.0};
    }
    GridField r = apply_A(x);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = b.values[i] - r.values[i];
    double rel = std::sqrt(grid_dot(r, r)) / bnorm;
    if (rel <= tol) return {0, rel};
    GridField z(x.spec);
    for (std::size_t i = 0; i < z.values.size(); ++i) z.values[i] = inv_diag.values[i] * r.values[i];
    GridField dir = z;
    double rz = grid_dot(r, z);
    int it = 0;
    while (it < cap) {
        const GridField Ad = apply_A(dir);
        const double step = rz / grid_dot(dir, Ad);
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            x.values[i] += step * dir.values[i];
            r.values[i] -= step * Ad.values[i];
        }
        ++it;
        rel = std::sqrt(grid_dot(r, r)) / bnorm;
        if (rel <= tol) break;
        for (std::size_t i = 0; i < z.values.size(); ++i) z.values[i] = inv_diag.values[i] * r.values[i];
        const double rz_new = grid_dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < dir.values.size(); ++i) dir.values[i] = z.values[i] + beta * dir.values[i];
    }
    return {it, rel};
}

int iteration_cap(const GridSpec& spec) {
    return static_cast<int>(10.0 * std::sqrt(static_cast<double>(spec.size())));
}

}  // namespace

DirichletSolveResult solve_dirichlet(const GridField& g, const GridField& f, const ProblemParams& p, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    }
    if (!(g.spec == f.spec)) {
        throw Error(ErrorCode::InvalidArgument, "boundary data and source live on different grids");
    }
    const GridSpec& spec = g.spec;
    const auto& d = spec.dims;

    GridField ring(spec);
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                if (spec.on_boundary_ring(i1, i2, i3)) ring.at(i1, i2, i3) = g.at(i1, i2, i3);
            }
        }
    }
    // b = f - L(ring) on interior cells
    GridField b = apply_L(ring, p);
    for (std::size_t i = 0; i < b.values.size(); ++i) b.values[i] = f.values[i] - b.values[i];
    b = interior_masked(b);

    const GridField inv_diag = jacobi_inverse_diagonal(spec, p, true);
    auto apply_A = [&](const GridField& x) { return interior_masked(apply_L(x, p)); };
    GridField x(spec);
    const auto [it, rel] = pcg(apply_A, inv_diag, b, x, tol, iteration_cap(spec));
    if (rel > tol) {
        throw Error(ErrorCode::NoConvergence, "CG stopped at relative residual " + std::to_string(rel) + " after " +
                                                  std::to_string(it) + " iterations");
    }
    for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] += ring.values[i];
    DirichletSolveResult result;
    result.solution = std::move(x);
    result.iterations = it;
    result.relative_residual = rel;
    return result;
}

DirichletSolveResult solve_zero_extension(const GridField& f, const ProblemParams& p, double tol,
                                          const GridField* initial) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    }
    const GridSpec& spec = f.spec;
    const GridField inv_diag = jacobi_inverse_diagonal(spec, p, false);
    GridField x = initial ? *initial : GridField(spec);
    auto apply_A = [&](const GridField& v) { return apply_L(v, p); };
    const auto [it, rel] = pcg(apply_A, inv_diag, f, x, tol, iteration_cap(spec));
    if (rel > tol) {
        throw Error(ErrorCode::NoConvergence, "CG stopped at relative residual " + std::to_string(rel) + " after " +
                                                  std::to_string(it) + " iterations");
    }
    DirichletSolveResult result;
    result.solution = std::move(x);
    result.iterations = it;
    result.relative_residual = rel;
    return result;
}

}  // namespace delab
