#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delab/analytic.hpp"
#include "delab/error.hpp"
#include "delab/identities.hpp"
#include "delab/probes.hpp"
#include "delab/random.hpp"
#include "delab/wgrid.hpp"

namespace delab::cli {

namespace {

SuiteReport blank(const std::string& name, const Settings& s) {
    SuiteReport r;
    r.suite = name;
    r.params = s.params;
    r.grid = s.grid;
    r.half_width = s.half_width;
    return r;
}

void require_regime(const Settings& s, const char* suite) {
    if (s.params.n != 3 || !in_explicit_regime(s.params)) {
        throw Error(ErrorCode::NotInExplicitRegime,
                    std::string(suite) + " suite needs N = 3, alpha = 1, s = 1 + 2/N (the closed-form solution)");
    }
}

void require_three_dims(const Settings& s, const char* suite) {
    if (s.params.n != 3) throw Error(ErrorCode::Unsupported, std::string(suite) + " suite runs in N = 3");
}

double norm(const std::vector<double>& x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::sqrt(r2);
}

// -div(|x_N|^{2a} grad |x|^{-l}) by nested centered differences of the flux.
double fd_divergence_of_power(const ProblemParams& p, double l, const std::vector<double>& x, double h) {
    const double a2 = 2.0 * p.alpha;
    auto u = [l](const std::vector<double>& y) { return std::pow(norm(y), -l); };
    double div = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto flux = [&](double offset) {
            std::vector<double> c = x;
            c[i] += offset;
            std::vector<double> hi = c, lo = c;
            hi[i] += 0.5 * h;
            lo[i] -= 0.5 * h;
            return std::pow(std::abs(c.back()), a2) * (u(hi) - u(lo)) / h;
        };
        div += (flux(0.5 * h) - flux(-0.5 * h)) / h;
    }
    return div;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"exponents", "transforms", "pohozaev", "kazdan-warner", "probes"};
    return names;
}

std::vector<std::vector<double>> residual_points(int n, int count, bool upper, std::uint64_t seed) {
    Lcg64 rng(seed);
    std::vector<std::vector<double>> pts;
    while (static_cast<int>(pts.size()) < count) {
        std::vector<double> x(static_cast<std::size_t>(n));
        if (upper) {
            for (int i = 0; i + 1 < n; ++i) x[static_cast<std::size_t>(i)] = rng.uniform(-1.5, 1.5);
            x.back() = rng.uniform(0.3, 2.0);
        } else {
            for (double& c : x) c = rng.uniform(-0.8, 0.8);
            if (norm(x) > 0.8) continue;
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

double worst_halving_ratio(const TransformedField& tf, const std::vector<std::vector<double>>& points, double h,
                           double floor) {
    double worst = 0.0;
    for (const auto& x : points) {
        const double coarse = std::abs(residual_at(tf, x, h));
        const double fine = std::abs(residual_at(tf, x, 0.5 * h));
        const double excess = std::max(fine - floor, 0.0);
        const double q = excess == 0.0 ? 0.0 : (coarse == 0.0 ? INFINITY : excess / coarse);
        worst = std::max(worst, q);
    }
    return worst;
}

SuiteReport suite_exponents(const Settings& s) {
    SuiteReport r = blank("exponents", s);
    const ProblemParams& p = s.params;
    const DerivedExponents e = derive_exponents(p);
    const double n = p.n;
    const double pstar = 2.0 * (n - p.s) / (n - 2.0);
    r.add(make_check("pstar", e.pstar, pstar, 1e-12, ToleranceMode::Rel));
    r.add(make_check("weight_a", e.weight_a, 2.0 * p.alpha, 1e-12, ToleranceMode::Rel));
    r.add(make_check("weight_b", e.weight_b, p.alpha * pstar - p.s, 1e-12));
    r.add(make_check("decay_d", e.decay_d, n - 2.0 + 2.0 * p.alpha, 1e-12, ToleranceMode::Rel));
    r.add(make_check("hardy_lambda", e.hardy_lambda, -p.alpha * (p.alpha - 1.0), 1e-12));
    r.add(make_check("power_coefficient_at_decay", power_divergence_coefficient(p, e.decay_d), 0.0, 0.0));

    // c(l) against a finite-difference divergence at random points.
    Lcg64 rng(s.seed);
    const std::vector<std::pair<const char*, double>> powers{{"1", 1.0}, {"2", 2.0}, {"d", e.decay_d}};
    for (const auto& [label, l] : powers) {
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            std::vector<double> x(static_cast<std::size_t>(p.n));
            double r0 = 0.0;
            do {
                for (double& c : x) c = rng.uniform(-2.0, 2.0);
                r0 = norm(x);
            } while (r0 < 1.0 || r0 > 2.0 || std::abs(x.back()) <= 0.2);
            const double exact =
                power_divergence_coefficient(p, l) * std::pow(std::abs(x.back()), 2.0 * p.alpha) * std::pow(r0, -l - 2.0);
            const double fd = fd_divergence_of_power(p, l, x, 1e-4);
            const double scale = std::pow(std::abs(x.back()), 2.0 * p.alpha) * std::pow(r0, -l - 2.0) * l * l;
            worst = std::max(worst, std::abs(fd - exact) / scale);
        }
        r.add(make_check(std::string("power_coefficient_fd_l") + label, worst, 0.0, 1e-4));
    }

    if (in_explicit_regime(p)) {
        r.add(make_check("regime_weight_b", e.weight_b, 1.0, 1e-12));
        r.add(make_check("regime_pstar", e.pstar, 2.0 * (n + 1.0) / n, 1e-12, ToleranceMode::Rel));
        r.add(make_check("regime_hardy_lambda", e.hardy_lambda, 0.0, 1e-12));
        r.add(make_check("regime_decay_d", e.decay_d, n, 1e-12));
        r.add(make_check("regime_tau", e.tau, 0.5, 1e-12));
        r.add(make_check("regime_k_dim", e.k_dim, 4.0, 0.0));
        r.add(make_check("regime_sigma_exp", e.sigma_exp, 0.0, 1e-12));
    }
    return r;
}

SuiteReport suite_transforms(const Settings& s) {
    require_regime(s, "transforms");
    SuiteReport r = blank("transforms", s);
    const ProblemParams& p = s.params;
    const double d = derive_exponents(p).decay_d;
    const AnalyticField U = explicit_U(p);

    const auto upper = residual_points(p.n, 20, true, s.seed);
    const auto ball_pts = residual_points(p.n, 20, false, s.seed + 1);

    // Kelvin transform: involution at lam = 1, and the image of a constant.
    const AnalyticField twice = kelvin(kelvin(U, 1.0, p), 1.0, p);
    const AnalyticField k1 = kelvin(constant_field(p, 1.0), 2.0, p);
    double inv_err = 0.0;
    double const_err = 0.0;
    for (const auto& x : upper) {
        inv_err = std::max(inv_err, std::abs(twice(x) - U(x)) / U(x));
        const double want = std::pow(2.0, d) * std::pow(norm(x), -d);
        const_err = std::max(const_err, std::abs(k1(x) - want) / want);
    }
    r.add(make_check("kelvin_involution_max_rel_err", inv_err, 0.0, 1e-12));
    r.add(make_check("kelvin_of_one_max_rel_err", const_err, 0.0, 1e-14));

    const TransformedField hardy = to_hardy(U, p);
    double subst_err = 0.0;
    for (const auto& x : upper) {
        subst_err = std::max(subst_err, std::abs(hardy.field(x) - x.back() * U(x)) / (x.back() * U(x)));
    }
    r.add(make_check("hardy_substitution_max_rel_err", subst_err, 0.0, 1e-14));

    // Residual ratio r(h/2)/r(h) must be <= 1/3 at every point.
    const double h = 0.05;
    r.add(make_check("anisotropic_halving_ratio", worst_halving_ratio(as_anisotropic(U, p), upper, h), 0.0, 1.0 / 3.0));
    r.add(make_check("hardy_halving_ratio", worst_halving_ratio(hardy, upper, h), 0.0, 1.0 / 3.0));
    r.add(make_check("hyperbolic_halving_ratio", worst_halving_ratio(hyperbolic_lift(U, p), upper, h), 0.0,
                     1.0 / 3.0));
    r.add(make_check("ball_halving_ratio", worst_halving_ratio(ball_map(U, p), ball_pts, h), 0.0, 1.0 / 3.0));
    return r;
}

SuiteReport suite_pohozaev(const Settings& s) {
    require_three_dims(s, "pohozaev");
    SuiteReport r = blank("pohozaev", s);
    const ProblemParams& p = s.params;
    const double d = derive_exponents(p).decay_d;
    const PohozaevQuadrature q{2 * s.grid, std::max(2, s.grid / 4)};

    if (in_explicit_regime(p)) {
        const AnalyticField U = explicit_U(p);
        const AnalyticField one = constant_field(p, 1.0);
        const PohozaevReport coarse = pohozaev_check(U, one, 1.0, p, q);
        const PohozaevReport fine = pohozaev_check(U, one, 1.0, p, q.refined());
        r.add(make_check("volume_term", coarse.volume_term, 0.0, 0.0));
        r.add(make_check("relative_residual", std::abs(coarse.residual) / coarse.max_abs_term(), 0.0, 1e-2));
        r.add(make_check("refined_relative_residual", std::abs(fine.residual) / fine.max_abs_term(), 0.0, 1e-2));
        r.add(make_check("refinement_residual_ratio", std::abs(fine.residual) / std::abs(coarse.residual), 0.0, 0.5));
    }

    // Pure power solution: B vanishes pointwise on every sphere about 0.
    const AnalyticField pw = power_solution(p, d);
    const PohozaevReport power = pohozaev_check(pw, constant_field(p, 0.0), 1.0, p, q);
    r.add(make_check("power_solution_boundary_B", power.boundary_B_term, 0.0, 1e-12));

    const double limit = pohozaev_limit_value(1.0, p);
    const std::vector<double> sigmas{1.0, 0.5, 0.25};
    const std::vector<double> plain = pohozaev_limit_probe(1.0, constant_field(p, 0.0), sigmas, p);
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        r.add(make_check("limit_sigma_" + std::to_string(i), plain[i], limit, 1e-6, ToleranceMode::Rel));
    }
    const std::vector<double> with_xi = pohozaev_limit_probe(1.0, coordinate_field(p, 0), sigmas, p);
    double growth = 0.0;  // largest error increase between consecutive radii, relative to the limit
    for (std::size_t i = 0; i + 1 < sigmas.size(); ++i) {
        growth = std::max(growth, std::abs(with_xi[i + 1] - limit) - std::abs(with_xi[i] - limit));
    }
    r.add(make_check("limit_with_x1_error_growth", growth / std::abs(limit), 0.0, 1e-12));
    r.add(make_check("limit_with_x1_smallest_sigma", with_xi.back(), limit, 1e-6, ToleranceMode::Rel));
    return r;
}

SuiteReport suite_kazdan_warner(const Settings& s) {
    require_regime(s, "kazdan-warner");
    SuiteReport r = blank("kazdan-warner", s);
    const ProblemParams& p = s.params;
    const AnalyticField U = explicit_U(p);
    const KazdanWarnerQuadrature q{2 * s.grid, s.half_width};

    const KazdanWarnerResult flat = kazdan_warner_radial(U, constant_field(p, 1.0), p, q);
    r.add(make_check("constant_K_value", flat.value, 0.0, 0.0));
    r.add(make_check("constant_K_flag", flat.nonexistence ? 1.0 : 0.0, 0.0, 0.0));

    // Flag margin: (10 quadrature_error + tail) / |value| must stay below 1.
    auto margin = [](const KazdanWarnerResult& k) {
        return (10.0 * k.quadrature_error + k.tail_bound) / std::abs(k.value);
    };
    const KazdanWarnerResult radial = kazdan_warner_radial(U, squared_norm_field(p), p, q);
    r.add(make_check("radial_K_positive", radial.value > 0.0 ? 1.0 : 0.0, 1.0, 0.0));
    r.add(make_check("radial_K_flag_margin", margin(radial), 0.0, 1.0));
    const KazdanWarnerResult trans = kazdan_warner_translation(U, coordinate_field(p, 0), 0, p, q);
    r.add(make_check("translation_K_positive", trans.value > 0.0 ? 1.0 : 0.0, 1.0, 0.0));
    r.add(make_check("translation_K_flag_margin", margin(trans), 0.0, 1.0));
    return r;
}

SuiteReport suite_probes(const Settings& s) {
    require_regime(s, "probes");
    SuiteReport r = blank("probes", s);
    const ProblemParams& p = s.params;
    const double d = derive_exponents(p).decay_d;
    const AnalyticField U = explicit_U(p);

    r.add(make_check("harnack_U_half_ball", harnack_ratio(U, 0.5, p), std::pow(2.25, 1.5), 1e-2, ToleranceMode::Rel));
    r.add(make_check("harnack_constant", harnack_ratio(constant_field(p, 2.0), 0.5, p), 1.0, 1e-15));

    // Dirichlet data |x - c|^{-d} with c outside the unit box; translation in x' keeps it L-harmonic.
    const GridSpec spec = GridSpec::cube(s.grid, 1.0);
    const std::vector<double> shift{3.0, 0.0, 0.0};
    const GridField g = sample(translated(power_solution(p, d), shift), spec);
    const DirichletSolveResult sol = solve_dirichlet(g, GridField(spec), p, 1e-10);
    const BoundaryMinProbe probe = boundary_min_probe(sol.solution);
    r.add(make_check("maximum_principle_pass", probe.pass ? 1.0 : 0.0, 1.0, 0.0));
    r.add(make_check("maximum_principle_strict", probe.strict ? 1.0 : 0.0, 1.0, 0.0));

    const AnalyticField model = add_fields(scale_field(power_solution(p, d), 5.0), constant_field(p, 2.0));
    const std::vector<double> radii{0.4, 0.2, 0.1, 0.05};
    const SingularityFit fit = singularity_fit(model, radii, p);
    r.add(make_check("singularity_fit_C", fit.C_hat, 5.0, 1e-8, ToleranceMode::Rel));
    r.add(make_check("singularity_fit_b0", fit.b0_hat, 2.0, 1e-8, ToleranceMode::Rel));

    const std::vector<double> far{8.0, 12.0, 16.0, 24.0, 32.0};
    r.add(make_check("decay_exponent_U", decay_exponent(U, far), -d, 0.05, ToleranceMode::Rel));

    const std::vector<double> heights{1e-2, 1e-3, 1e-4, 1e-5};
    const GradientBoundProbe gb = gradient_bound_probe(U, heights);
    r.add(make_check("gradient_bound_shortfall", std::max(0.0, -gb.exponent), 0.0, 0.1));

    const std::vector<double> b{1.0, 0.0};
    r.add(make_check("inversion_radius", inversion_radius_estimate(U, b, p), std::sqrt(2.0), 1e-12,
                     ToleranceMode::Rel));
    return r;
}

SuiteReport run_suite(const std::string& name, const Settings& s) {
    if (name == "exponents") return suite_exponents(s);
    if (name == "transforms") return suite_transforms(s);
    if (name == "pohozaev") return suite_pohozaev(s);
    if (name == "kazdan-warner") return suite_kazdan_warner(s);
    if (name == "probes") return suite_probes(s);
    if (name == "all") {
        SuiteReport all = blank("all", s);
        for (const auto& sub : suite_names()) {
            for (Check c : run_suite(sub, s).checks) {
                c.name = sub + "." + c.name;
                all.add(std::move(c));
            }
        }
        return all;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace delab::cli
