// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// A criterion also fails when it overruns its time budget.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "delab/analytic.hpp"
#include "delab/identities.hpp"
#include "delab/probes.hpp"
#include "delab/random.hpp"
#include "delab/varmin.hpp"
#include "delab/wgrid.hpp"
#include "delab/xforms.hpp"
#include "studies.hpp"
#include "suites.hpp"

using namespace delab;

namespace {

const ProblemParams kP = validate_params(3, 1.0, 5.0 / 3.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome exponent_algebra() {
    const auto e = derive_exponents(kP);
    const double err = std::max({std::abs(e.pstar - 8.0 / 3.0), std::abs(e.weight_b - 1.0), std::abs(e.decay_d - 3.0),
                                 std::abs(e.hardy_lambda), std::abs(e.tau - 0.5), std::abs(e.sigma_exp)});
    const bool pass = err <= 1e-12 && e.k_dim == 4;
    return {pass, "max deviation " + fmt("%.1e", err) + ", k=" + std::to_string(e.k_dim)};
}

Outcome power_solution_identity() {
    Lcg64 rng(42);
    double worst = 0.0;
    const double d = derive_exponents(kP).decay_d;
    for (double l : {1.0, 2.0, d}) {
        const auto f = [l](const std::array<double, 3>& x) {
            return std::pow(x[0] * x[0] + x[1] * x[1] + x[2] * x[2], -0.5 * l);
        };
        int n = 0;
        while (n < 50) {
            const std::array<double, 3> x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            if (std::abs(x[2]) <= 0.2 || r <= 1.0 || r >= 2.0) continue;
            ++n;
            // Flux-form difference of |x_3|^2 grad f at step 1e-4.
            const double h = 1e-4;
            double div = 0.0;
            for (int a = 0; a < 3; ++a) {
                auto xp = x, xm = x;
                xp[static_cast<std::size_t>(a)] += h;
                xm[static_cast<std::size_t>(a)] -= h;
                const double wp = a == 2 ? std::pow(x[2] + 0.5 * h, 2) : x[2] * x[2];
                const double wm = a == 2 ? std::pow(x[2] - 0.5 * h, 2) : x[2] * x[2];
                div += (wp * (f(xp) - f(x)) - wm * (f(x) - f(xm))) / (h * h);
            }
            const double scale = x[2] * x[2] * std::pow(r, -l - 2);
            const double model = power_divergence_coefficient(kP, l) * scale;
            worst = std::max(worst, std::abs(div - model) / std::max(std::abs(model), scale));
        }
    }
    const bool root = power_divergence_coefficient(kP, d) == 0.0;
    return {worst <= 1e-4 && root, "max rel err " + fmt("%.2e", worst) + (root ? ", c(d)=0 exactly" : ", c(d)!=0")};
}

Outcome explicit_residual() {
    const std::vector<int> grids{16, 32, 64};
    const auto l1 = cli::convergence_study("explicit-residual", grids, 8.0, kP, cli::Norm::L1);
    const auto l2 = cli::convergence_study("explicit-residual", grids, 8.0, kP, cli::Norm::L2);
    bool pass = true;
    std::ostringstream os;
    os << "L1 orders";
    for (std::size_t i = 1; i < l1.size(); ++i) {
        pass = pass && l1[i].order >= 1.5;
        os << " " << fmt("%.2f", l1[i].order);
    }
    os << " (L2 orders";
    for (std::size_t i = 1; i < l2.size(); ++i) os << " " << fmt("%.2f", l2[i].order);
    os << ")";
    return {pass, os.str()};
}

Outcome transform_chain() {
    const auto U = explicit_U(kP);
    const auto upper = cli::residual_points(3, 20, true, 42);
    const auto ball = cli::residual_points(3, 20, false, 42);
    const double rh = cli::worst_halving_ratio(to_hardy(U, kP), upper, 0.05);
    const double ry = cli::worst_halving_ratio(hyperbolic_lift(U, kP), upper, 0.05);
    const double rb = cli::worst_halving_ratio(ball_map(U, kP), ball, 0.05);
    const bool pass = rh <= 1.0 / 3.0 && ry <= 1.0 / 3.0 && rb <= 1.0 / 3.0;
    return {pass, "worst |r(h/2)|/|r(h)|: hardy " + fmt("%.3f", rh) + ", hyperbolic " + fmt("%.3f", ry) + ", ball " +
                      fmt("%.3f", rb)};
}

Outcome pohozaev() {
    const auto U = explicit_U(kP);
    const auto K = constant_field(kP, 1.0);
    const PohozaevQuadrature q{};
    const auto r = pohozaev_check(U, K, 1.0, kP, q);
    const auto rr = pohozaev_check(U, K, 1.0, kP, q.refined());
    const double bmax = std::max(std::abs(r.boundary_K_term), std::abs(r.boundary_B_term));
    const auto w = pohozaev_check(power_solution(kP, 3.0), K, 1.0, kP, q);
    const bool pass = std::abs(r.residual) <= 1e-2 * bmax && std::abs(rr.residual) <= 0.5 * std::abs(r.residual) &&
                      std::abs(w.boundary_B_term) <= 1e-12;
    return {pass, "residual/boundary " + fmt("%.2e", std::abs(r.residual) / bmax) + ", refined ratio " +
                      fmt("%.1e", std::abs(rr.residual) / std::abs(r.residual)) + ", power B " +
                      fmt("%.1e", w.boundary_B_term)};
}

Outcome pohozaev_limit() {
    const double target = -6.0 * std::numbers::pi;
    const std::vector<double> sigmas{1.0, 0.5, 0.25};
    const auto plain = pohozaev_limit_probe(1.0, constant_field(kP, 0.0), sigmas, kP);
    double worst = 0.0;
    for (double v : plain) worst = std::max(worst, std::abs(v - target) / std::abs(target));
    const auto xi = pohozaev_limit_probe(1.0, coordinate_field(kP, 0), sigmas, kP);
    bool decreasing = true;
    for (std::size_t i = 1; i < xi.size(); ++i) {
        decreasing = decreasing && std::abs(xi[i] - target) <= std::abs(xi[i - 1] - target) + 1e-12;
    }
    const double last = std::abs(xi.back() - target) / std::abs(target);
    return {worst <= 1e-6 && decreasing && last <= 1e-6,
            "xi=0 max rel err " + fmt("%.1e", worst) + ", xi=x1 final rel err " + fmt("%.1e", last)};
}

Outcome kazdan_warner() {
    const auto U = explicit_U(kP);
    const auto k1 = kazdan_warner_radial(U, constant_field(kP, 1.0), kP);
    const auto kr = kazdan_warner_radial(U, squared_norm_field(kP), kP);
    const auto kt = kazdan_warner_translation(U, coordinate_field(kP, 0), 0, kP);
    const bool pass = k1.value == 0.0 && kr.value > 0.0 && kr.value > 10.0 * kr.quadrature_error && kr.nonexistence &&
                      kt.value != 0.0 && std::abs(kt.value) > 10.0 * kt.quadrature_error && kt.nonexistence;
    return {pass, "K=1 " + fmt("%g", k1.value) + "; K=|x|^2 " + fmt("%.1f", kr.value) + " (err " +
                      fmt("%.2g", kr.quadrature_error) + "); K=x1 " + fmt("%.1f", kt.value) + " (err " +
                      fmt("%.2g", kt.quadrature_error) + ")"};
}

Outcome ground_state() {
    const auto r = minimize_rayleigh(random_positive_field(GridSpec::cube(32, 8.0), 42), kP);
    bool monotone = true;
    for (std::size_t i = 1; i < r.history.size(); ++i) monotone = monotone && r.history[i] <= r.history[i - 1];
    const bool fitted = r.fitted_profile.has_value() && !r.fitted_profile->degenerate;
    const double misfit = fitted ? r.fitted_profile->misfit : 1.0;
    return {monotone && r.converged && fitted && misfit <= 0.05,
            "R=" + fmt("%.6f", r.rayleigh) + " after " + std::to_string(r.iterations) + " steps, " +
                (r.converged ? "converged" : "not converged") + ", trace misfit " + fmt("%.4f", misfit)};
}

Outcome maximum_principle_and_harnack() {
    const auto spec = GridSpec::cube(32, 1.0);
    GridField g(spec);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            for (int k = 0; k < 32; ++k) {
                const auto x = spec.point(i, j, k);
                g.at(i, j, k) = std::pow((x[0] - 3) * (x[0] - 3) + x[1] * x[1] + x[2] * x[2], -1.5);
            }
    const auto sol = solve_dirichlet(g, GridField(spec, 0.0), kP, 1e-10).solution;
    const auto probe = boundary_min_probe(sol);
    const double h = harnack_ratio(explicit_U(kP), 0.5, kP);
    const bool pass = probe.pass && probe.margin > 0.0 && std::abs(h - 3.375) <= 0.01 * 3.375;
    return {pass, "margin " + fmt("%.3e", probe.margin) + ", Harnack ratio " + fmt("%.6f", h)};
}

Outcome kelvin_decay() {
    const auto k = kelvin(constant_field(kP, 1.0), 2.0, kP);
    Lcg64 rng(42);
    bool exact = true;
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> x{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        exact = exact && k(x) == 8.0 * std::pow(r, -3.0);
    }
    const std::vector<double> far{8.0, 12.0, 16.0, 24.0, 32.0};
    const double slope = decay_exponent(explicit_U(kP), far);
    const std::vector<double> radii{0.4, 0.2, 0.1, 0.05};
    const auto fit =
        singularity_fit(add_fields(scale_field(power_solution(kP, 3.0), 5.0), constant_field(kP, 2.0)), radii, kP);
    const bool pass = exact && std::abs(slope + 3.0) <= 0.15 && std::abs(fit.C_hat - 5.0) <= 1e-8 &&
                      std::abs(fit.b0_hat - 2.0) <= 1e-8;
    return {pass, std::string(exact ? "kelvin(1,2) exact" : "kelvin(1,2) inexact") + ", decay slope " +
                      fmt("%.4f", slope) + ", fit C=" + fmt("%.12g", fit.C_hat) + " b0=" + fmt("%.12g", fit.b0_hat)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "exponent algebra", 1, exponent_algebra},
        {2, "power-solution identity", 5, power_solution_identity},
        {3, "explicit-solution residual order", 120, explicit_residual},
        {4, "transform chain halving", 60, transform_chain},
        {5, "Pohozaev balance", 120, pohozaev},
        {6, "Pohozaev limit", 30, pohozaev_limit},
        {7, "Kazdan-Warner detectors", 60, kazdan_warner},
        {8, "variational ground state", 600, ground_state},
        {9, "maximum principle and Harnack", 60, maximum_principle_and_harnack},
        {10, "Kelvin/decay duality", 30, kelvin_decay},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d %-34s %s  %s  [%.2f s of %.0f s%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
