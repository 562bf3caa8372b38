#include "delab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "delab/error.hpp"
#include "delab/parallel.hpp"

namespace delab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre needs n >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -z;
        nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

SphereQuadrature SphereQuadrature::product(double radius, int polar_per_hemisphere, int azimuth) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive");
    if (polar_per_hemisphere < 1 || azimuth < 1) throw Error(ErrorCode::InvalidArgument, "empty sphere rule");
    std::vector<double> t;
    std::vector<double> wt;
    gauss_legendre(polar_per_hemisphere, t, wt);
    SphereQuadrature q;
    q.radius = radius;
    const double dphi = 2.0 * std::numbers::pi / azimuth;
    const double r2 = radius * radius;
    for (int hemi = 0; hemi < 2; ++hemi) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double z = hemi == 0 ? -0.5 * (t[i] + 1.0) : 0.5 * (t[i] + 1.0);
            const double wz = 0.5 * wt[i];
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int j = 0; j < azimuth; ++j) {
                const double phi = (j + 0.5) * dphi;
                q.nodes.push_back({radius * rho * std::cos(phi), radius * rho * std::sin(phi), radius * z});
                q.weights.push_back(r2 * wz * dphi);
            }
        }
    }
    return q;
}

SphereQuadrature SphereQuadrature::for_degree(double radius, int degree) {
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
    return product(radius, degree / 2 + 1, degree + 1);
}

double sphere_integral(const std::function<double(const std::array<double, 3>&)>& f, const SphereQuadrature& q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double v = f(q.nodes[i]);
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteSample, "non-finite integrand on the sphere");
        acc += q.weights[i] * v;
    }
    return acc;
}

BandedIntegral sphere_integral_banded(const std::function<double(const std::array<double, 3>&)>& f,
                                      const SphereQuadrature& q, double band) {
    BandedIntegral out;
    double fmax = 0.0;
    double skipped_weight = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        if (std::abs(q.nodes[i][2]) <= band) {
            ++out.excluded_nodes;
            skipped_weight += q.weights[i];
            continue;
        }
        const double v = f(q.nodes[i]);
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteSample, "non-finite integrand on the sphere");
        out.value += q.weights[i] * v;
        fmax = std::max(fmax, std::abs(v));
    }
    // The skipped nodes can carry more weight than the band's area, so bound with their weights.
    out.excluded_bound = skipped_weight * fmax;
    return out;
}

double spherical_mean(const AnalyticField& f, double r, int degree) {
    if (f.dim() != 3) throw Error(ErrorCode::Unsupported, "sphere rules are implemented for N = 3");
    const SphereQuadrature q = SphereQuadrature::for_degree(r, degree);
    const double total = sphere_integral([&f](const std::array<double, 3>& x) { return f(x); }, q);
    return total / (4.0 * std::numbers::pi * r * r);
}

double boundary_density_B(const AnalyticField& u, std::span<const double> x, double sigma, const ProblemParams& p) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    if (!(sigma > 0.0) || std::abs(r - sigma) > 1e-9 * sigma) {
        throw Error(ErrorCode::PointNotOnSphere, "|x| = " + std::to_string(r) + ", sigma = " + std::to_string(sigma));
    }
    const auto e = derive_exponents(p);
    std::vector<double> g(x.size());
    u.gradient(x, g);
    double dn = 0.0;
    double g2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dn += g[i] * x[i] / r;
        g2 += g[i] * g[i];
    }
    const double w = std::pow(std::abs(x.back()), e.weight_a);
    return 0.5 * e.decay_d * w * u(x) * dn - 0.5 * sigma * w * g2 + sigma * w * dn * dn;
}

namespace {

struct Trilinear {
    GridSpec spec;

    // index of the lower center and the fractional offset along one axis, clamped to the center hull
    std::pair<int, double> locate(int axis, double x) const {
        const double h = spec.spacing(axis);
        const int n = spec.dims[static_cast<std::size_t>(axis)];
        double s = (x + spec.half_width) / h - 0.5;
        s = std::clamp(s, 0.0, static_cast<double>(n - 1));
        int i = static_cast<int>(std::floor(s));
        if (i >= n - 1) i = n - 2;
        return {i, s - i};
    }

    double operator()(const std::vector<double>& vals, std::span<const double> x) const {
        const auto [i, a] = locate(0, x[0]);
        const auto [j, b] = locate(1, x[1]);
        const auto [k, c] = locate(2, x[2]);
        double acc = 0.0;
        for (int di = 0; di < 2; ++di) {
            for (int dj = 0; dj < 2; ++dj) {
                for (int dk = 0; dk < 2; ++dk) {
                    const double w = (di ? a : 1.0 - a) * (dj ? b : 1.0 - b) * (dk ? c : 1.0 - c);
                    acc += w * vals[spec.index(i + di, j + dj, k + dk)];
                }
            }
        }
        return acc;
    }
};

}  // namespace

AnalyticField grid_field_adapter(const GridField& u, const ProblemParams& p) {
    const GridSpec spec = u.spec;
    const auto& d = spec.dims;
    auto grads = std::make_shared<std::array<std::vector<double>, 3>>();
    for (auto& g : *grads) g.assign(spec.size(), 0.0);
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                const std::array<int, 3> idx{i1, i2, i3};
                for (int a = 0; a < 3; ++a) {
                    std::array<int, 3> lo = idx;
                    std::array<int, 3> hi = idx;
                    const auto au = static_cast<std::size_t>(a);
                    if (idx[au] > 0) lo[au] -= 1;
                    if (idx[au] < d[au] - 1) hi[au] += 1;
                    const double span = (hi[au] - lo[au]) * spec.spacing(a);
                    (*grads)[au][spec.index(i1, i2, i3)] =
                        (u.at(hi[0], hi[1], hi[2]) - u.at(lo[0], lo[1], lo[2])) / span;
                }
            }
        }
    }
    auto vals = std::make_shared<std::vector<double>>(u.values);
    const Trilinear interp{spec};
    return AnalyticField(
        3, Domain::FullSpace, p, [vals, interp](std::span<const double> x) { return interp(*vals, x); },
        [grads, interp](std::span<const double> x, std::span<double> g) {
            for (std::size_t a = 0; a < 3; ++a) g[a] = interp((*grads)[a], x);
        });
}

double PohozaevReport::max_abs_term() const {
    return std::max({std::abs(volume_term), std::abs(boundary_K_term), std::abs(boundary_B_term)});
}

namespace {

void require_three_dims(const ProblemParams& p) {
    if (p.n != 3) throw Error(ErrorCode::Unsupported, "sphere and volume rules are implemented for N = 3");
}

double volume_term(const AnalyticField& u, const AnalyticField& K, double sigma, const ProblemParams& p,
                   int cells) {
    const auto e = derive_exponents(p);
    const GridSpec vol = GridSpec::cube(cells, sigma);
    const double s2 = sigma * sigma;
    const double integral = weighted_cell_sum(vol, e.weight_b, [&](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (r2 >= s2) return 0.0;
        std::array<double, 3> gk{};
        K.gradient(x, gk);
        const double xgk = x[0] * gk[0] + x[1] * gk[1] + x[2] * gk[2];
        if (xgk == 0.0) return 0.0;
        return xgk * std::pow(std::abs(u(x)), e.pstar);
    });
    return integral / e.pstar;
}

}  // namespace

PohozaevReport pohozaev_check(const AnalyticField& u, const AnalyticField& K, double sigma, const ProblemParams& p,
                              const PohozaevQuadrature& q) {
    require_three_dims(p);
    if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
    const auto e = derive_exponents(p);
    PohozaevReport rep;
    rep.volume_term = volume_term(u, K, sigma, p, q.volume_cells);
    const SphereQuadrature sq = SphereQuadrature::for_degree(sigma, q.sphere_degree);
    rep.boundary_K_term = sigma / e.pstar * sphere_integral(
                                                [&](const std::array<double, 3>& x) {
                                                    return K(x) * std::pow(std::abs(x[2]), e.weight_b) *
                                                           std::pow(std::abs(u(x)), e.pstar);
                                                },
                                                sq);
    rep.boundary_B_term =
        sphere_integral([&](const std::array<double, 3>& x) { return boundary_density_B(u, x, sigma, p); }, sq);
    rep.residual = rep.volume_term - rep.boundary_K_term - rep.boundary_B_term;
    return rep;
}

PohozaevReport pohozaev_check_grid(const GridField& u, const AnalyticField& K, double sigma, const ProblemParams& p,
                                   const PohozaevQuadrature& q) {
    require_three_dims(p);
    const auto e = derive_exponents(p);
    const AnalyticField ua = grid_field_adapter(u, p);
    const double band = 2.0 * u.spec.spacing(2);
    PohozaevReport rep;
    rep.volume_term = volume_term(ua, K, sigma, p, q.volume_cells);
    const SphereQuadrature sq = SphereQuadrature::for_degree(sigma, q.sphere_degree);
    const BandedIntegral kt = sphere_integral_banded(
        [&](const std::array<double, 3>& x) {
            return K(x) * std::pow(std::abs(x[2]), e.weight_b) * std::pow(std::abs(ua(x)), e.pstar);
        },
        sq, band);
    const BandedIntegral bt = sphere_integral_banded(
        [&](const std::array<double, 3>& x) { return boundary_density_B(ua, x, sigma, p); }, sq, band);
    rep.boundary_K_term = sigma / e.pstar * kt.value;
    rep.boundary_B_term = bt.value;
    rep.excluded_bound = sigma / e.pstar * kt.excluded_bound + bt.excluded_bound;
    rep.residual = rep.volume_term - rep.boundary_K_term - rep.boundary_B_term;
    return rep;
}

std::vector<double> pohozaev_limit_probe(double A, const AnalyticField& xi, std::span<const double> sigmas,
                                         const ProblemParams& p, int sphere_degree) {
    require_three_dims(p);
    if (!(A > 0.0)) throw Error(ErrorCode::NonpositiveAmplitude, "A must be positive");
    const std::array<double, 3> origin{0.0, 0.0, 0.0};
    if (std::abs(xi(origin)) > 1e-12) throw Error(ErrorCode::InvalidArgument, "xi(0) must vanish");
    const auto e = derive_exponents(p);
    const AnalyticField u = add_fields(add_fields(power_solution(p, e.decay_d), constant_field(p, A)), xi);
    std::vector<double> out;
    out.reserve(sigmas.size());
    for (double sigma : sigmas) {
        const SphereQuadrature sq = SphereQuadrature::for_degree(sigma, sphere_degree);
        out.push_back(sphere_integral(
            [&](const std::array<double, 3>& x) { return boundary_density_B(u, x, sigma, p); }, sq));
    }
    return out;
}

double pohozaev_limit_value(double A, const ProblemParams& p) {
    require_three_dims(p);
    const auto e = derive_exponents(p);
    const double sphere_weight = 4.0 * std::numbers::pi / (e.weight_a + 1.0);
    return -0.5 * A * e.decay_d * e.decay_d * sphere_weight;
}

namespace {

KazdanWarnerResult kw_integral(const AnalyticField& u, const ProblemParams& p, const KazdanWarnerQuadrature& q,
                               const std::function<double(const std::array<double, 3>&)>& factor) {
    require_three_dims(p);
    if (q.cells % 4 != 0) {
        throw Error(ErrorCode::InvalidArgument, "cells must be a multiple of 4 for the error estimate");
    }
    const auto e = derive_exponents(p);
    auto integrand = [&](const std::array<double, 3>& x) {
        const double f = factor(x);
        if (f == 0.0) return 0.0;
        return f * std::pow(std::abs(u(x)), e.pstar);
    };
    KazdanWarnerResult res;
    res.value = weighted_cell_sum(GridSpec::cube(q.cells, q.half_width), e.weight_b, integrand);
    const double coarse = weighted_cell_sum(GridSpec::cube(q.cells / 2, q.half_width), e.weight_b, integrand);
    res.quadrature_error = std::abs(res.value - coarse) / 3.0;

    // tail: power-law fit of the weighted integrand's spherical mean between L/2 and L
    auto weighted_abs = [&](const std::array<double, 3>& x) {
        return std::abs(integrand(x)) * std::pow(std::abs(x[2]), e.weight_b);
    };
    const double L = q.half_width;
    const double m_half = sphere_integral(weighted_abs, SphereQuadrature::for_degree(0.5 * L, 16));
    const double m_full = sphere_integral(weighted_abs, SphereQuadrature::for_degree(L, 16));
    if (m_full == 0.0) {
        res.tail_bound = 0.0;
    } else {
        // sphere integrals scale like r^{2 - q} for a pointwise decay r^{-q}
        const double q_dec = 2.0 - std::log(m_full / m_half) / std::log(2.0);
        res.tail_bound = q_dec > 3.0 ? m_full * L / (q_dec - 3.0) : std::numeric_limits<double>::infinity();
    }
    res.nonexistence = std::abs(res.value) > 10.0 * res.quadrature_error + res.tail_bound;
    return res;
}

}  // namespace

KazdanWarnerResult kazdan_warner_radial(const AnalyticField& u, const AnalyticField& K, const ProblemParams& p,
                                        const KazdanWarnerQuadrature& q) {
    return kw_integral(u, p, q, [&K](const std::array<double, 3>& x) {
        std::array<double, 3> g{};
        K.gradient(x, g);
        return x[0] * g[0] + x[1] * g[1] + x[2] * g[2];
    });
}

KazdanWarnerResult kazdan_warner_translation(const AnalyticField& u, const AnalyticField& K, int axis,
                                             const ProblemParams& p, const KazdanWarnerQuadrature& q) {
    if (axis < 0 || axis >= p.n - 1) {
        throw Error(ErrorCode::AxisOutOfRange, "axis " + std::to_string(axis) + " is not tangential");
    }
    const auto a = static_cast<std::size_t>(axis);
    return kw_integral(u, p, q, [&K, a](const std::array<double, 3>& x) {
        std::array<double, 3> g{};
        K.gradient(x, g);
        return g[a];
    });
}

}  // namespace delab
