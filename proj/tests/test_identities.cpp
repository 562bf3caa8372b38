#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "delab/analytic.hpp"
#include "delab/error.hpp"
#include "delab/identities.hpp"
#include "oracles.hpp"

using namespace delab;

namespace {

const ProblemParams kP = validate_params(3, 1.0, 5.0 / 3.0);

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    std::vector<double> x, w;
    for (int n : {1, 2, 5, 12, 40}) {
        gauss_legendre(n, x, w);
        ASSERT_EQ(x.size(), static_cast<std::size_t>(n));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            EXPECT_NEAR(s, exact, 1e-13) << n << " " << deg;
        }
    }
}

TEST(SphereIntegral, Examples) {
    const auto q1 = SphereQuadrature::for_degree(1.0, 8);
    EXPECT_NEAR(sphere_integral([](const auto&) { return 1.0; }, q1), 4 * oracle::pi, 1e-10 * 4 * oracle::pi);
    EXPECT_NEAR(sphere_integral([](const auto& x) { return x[2] * x[2]; }, q1), 4 * oracle::pi / 3, 1e-12);
    const auto q2 = SphereQuadrature::for_degree(2.0, 8);
    EXPECT_NEAR(sphere_integral([](const auto& x) { return x[2] * x[2]; }, q2), 16 * 4 * oracle::pi / 3, 1e-10);
    EXPECT_NEAR(sphere_integral([](const auto& x) { return x[2] * x[2]; }, q2), 67.0206, 1e-4);
    EXPECT_EQ(code_of([&] { sphere_integral([](const auto&) { return std::nan(""); }, q1); }),
              ErrorCode::NonFiniteSample);
}

TEST(SphereIntegral, ExactOnMonomialsUpToDegree) {
    const int degree = 10;
    const auto q = SphereQuadrature::for_degree(1.0, degree);
    for (int a = 0; a <= degree; ++a)
        for (int b = 0; a + b <= degree; ++b)
            for (int c = 0; a + b + c <= degree; ++c) {
                const double v = sphere_integral(
                    [&](const auto& x) { return std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c); }, q);
                EXPECT_NEAR(v, oracle::sphere_monomial(a, b, c), 1e-12) << a << b << c;
            }
}

TEST(SphereIntegral, WeightScalingLaw) {
    for (double alpha : {1.0, 0.75, 1.6}) {
        const auto f = [alpha](const auto& x) { return std::pow(std::abs(x[2]), 2 * alpha); };
        const double one = sphere_integral(f, SphereQuadrature::for_degree(1.0, 16));
        for (double sigma : {0.3, 2.0, 5.0}) {
            const double v = sphere_integral(f, SphereQuadrature::for_degree(sigma, 16));
            EXPECT_NEAR(v, std::pow(sigma, 2 + 2 * alpha) * one, 1e-10 * v);
        }
        // Gamma-function value of int |x_3|^{2a} on the unit sphere is 4 pi / (2a + 1). Fractional powers
        // are not polynomials, so the Gauss rule is only accurate to a few digits there.
        const double tol = alpha == std::floor(alpha) ? 1e-12 : 1e-4;
        EXPECT_NEAR(one, 4 * oracle::pi / (2 * alpha + 1), tol);
    }
}

TEST(SphereIntegral, BandedBoundCoversTheSkippedPart) {
    const auto q = SphereQuadrature::for_degree(1.0, 24);
    const auto f = [](const auto& x) { return 1.0 + x[0] * x[0]; };
    const auto b = sphere_integral_banded(f, q, 0.1);
    EXPECT_GT(b.excluded_nodes, 0);
    EXPECT_LE(std::abs(sphere_integral(f, q) - b.value), b.excluded_bound);
}

TEST(SphericalMean, OfConstantAndQuadratic) {
    EXPECT_NEAR(spherical_mean(constant_field(kP, 2.5), 0.7), 2.5, 1e-13);
    EXPECT_NEAR(spherical_mean(squared_norm_field(kP), 0.7), 0.49, 1e-13);
}

TEST(BoundaryDensity, VanishesOnThePowerSolution) {
    oracle::Points pts(1);
    for (double alpha : {1.0, 0.8, 1.7}) {
        const auto p = validate_params(3, alpha, 1.0);
        const auto w = power_solution(p, derive_exponents(p).decay_d);
        for (int i = 0; i < 1000; ++i) {
            const double sigma = pts.uniform(0.5, 2.0);
            auto x = pts.in_box(-1, 1);
            const double r = oracle::norm3(x);
            for (auto& c : x) c *= sigma / r;
            EXPECT_LE(std::abs(boundary_density_B(w, std::span<const double>(x.data(), 3), sigma, p)), 1e-12);
        }
    }
}

TEST(BoundaryDensity, Examples) {
    const std::vector<double> pole{0.0, 0.0, 1.0};
    EXPECT_EQ(boundary_density_B(constant_field(kP, 3.0), pole, 1.0, kP), 0.0);
    // u = |x|^{-3} + 1 at the pole: u = 2, du/dn = -3, |grad u|^2 = 9, weight 1, d = 3:
    // (3/2)(2)(-3) - 9/2 + 9 = -4.5.
    const auto u = add_fields(power_solution(kP, 3.0), constant_field(kP, 1.0));
    EXPECT_NEAR(boundary_density_B(u, pole, 1.0, kP), -4.5, 1e-13);
    EXPECT_EQ(code_of([&] { boundary_density_B(u, std::vector<double>{0, 0, 1.01}, 1.0, kP); }),
              ErrorCode::PointNotOnSphere);
}

TEST(Pohozaev, ExplicitSolutionBalances) {
    const auto U = explicit_U(kP);
    const auto K = constant_field(kP, 1.0);
    const PohozaevQuadrature q{};
    const auto r = pohozaev_check(U, K, 1.0, kP, q);
    EXPECT_EQ(r.volume_term, 0.0);
    EXPECT_LE(std::abs(r.residual), 1e-2 * std::max(std::abs(r.boundary_K_term), std::abs(r.boundary_B_term)));
    const auto rr = pohozaev_check(U, K, 1.0, kP, q.refined());
    EXPECT_LE(std::abs(rr.residual), std::abs(r.residual) / 2.0);
    // The boundary K term is (1/p) int_{|x|=1} |x_N| U^{8/3}; check a fine evaluation against an independent rule.
    const auto fine = pohozaev_check(U, K, 1.0, kP, {16, 78});
    std::vector<double> z, wz;
    gauss_legendre(40, z, wz);
    double ref = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (int hemi : {-1, 1}) {
            const double t = 0.5 * (z[i] + 1.0) * hemi;  // x_3 on each hemisphere
            const double rho = std::sqrt(1 - t * t);
            // U is axially symmetric, so the azimuth integral is 2 pi times one value.
            ref += 0.5 * wz[i] * 2 * oracle::pi * std::abs(t) * std::pow(oracle::U3({rho, 0.0, t}), 8.0 / 3.0);
        }
    }
    EXPECT_NEAR(fine.boundary_K_term, ref * 3.0 / 8.0, 1e-10 * ref);
}

TEST(Pohozaev, PowerSolutionAndZeroField) {
    const auto K = constant_field(kP, 1.0);
    const auto r = pohozaev_check(power_solution(kP, 3.0), K, 1.0, kP);
    EXPECT_LE(std::abs(r.boundary_B_term), 1e-12);
    const auto z = pohozaev_check(constant_field(kP, 0.0), K, 1.0, kP);
    EXPECT_EQ(z.volume_term, 0.0);
    EXPECT_EQ(z.boundary_K_term, 0.0);
    EXPECT_EQ(z.boundary_B_term, 0.0);
}

TEST(Pohozaev, GridVersionTracksTheAnalyticOne) {
    const auto U = explicit_U(kP);
    const auto K = constant_field(kP, 1.0);
    const auto exact = pohozaev_check(U, K, 1.0, kP);
    const auto g = pohozaev_check_grid(sample(U, GridSpec::cube(64, 2.0)), K, 1.0, kP);
    EXPECT_NEAR(g.boundary_K_term, exact.boundary_K_term, 0.05 * std::abs(exact.boundary_K_term) + g.excluded_bound);
    EXPECT_GT(g.excluded_bound, 0.0);
}

TEST(GridAdapter, ReproducesAffineFields) {
    const auto spec = GridSpec::cube(8, 1.0);
    GridField g(spec);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                const auto x = spec.point(i, j, k);
                g.at(i, j, k) = 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2];
            }
    const auto f = grid_field_adapter(g, kP);
    oracle::Points pts(2);
    for (int i = 0; i < 50; ++i) {
        const auto x = pts.in_box(-0.8, 0.8);
        EXPECT_NEAR(f({x[0], x[1], x[2]}), 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2], 1e-13);
        const auto gr = f.gradient({x[0], x[1], x[2]});
        EXPECT_NEAR(gr[0], 2.0, 1e-12);
        EXPECT_NEAR(gr[1], -1.0, 1e-12);
        EXPECT_NEAR(gr[2], 0.5, 1e-12);
    }
}

TEST(PohozaevLimit, ExactWithoutPerturbation) {
    const auto zero = constant_field(kP, 0.0);
    const std::vector<double> sigmas{1.0, 0.5, 0.25};
    const auto v = pohozaev_limit_probe(1.0, zero, sigmas, kP);
    const double target = -6.0 * oracle::pi;
    EXPECT_NEAR(pohozaev_limit_value(1.0, kP), target, 1e-13);
    for (double x : v) EXPECT_NEAR(x, target, 1e-6 * 6 * oracle::pi);
    const auto v2 = pohozaev_limit_probe(2.0, zero, sigmas, kP);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v2[i], 2.0 * v[i], 1e-12 * std::abs(v[i]));
}

TEST(PohozaevLimit, TangentialPerturbationConverges) {
    const std::vector<double> sigmas{1.0, 0.5, 0.25, 0.125};
    const auto v = pohozaev_limit_probe(1.0, coordinate_field(kP, 0), sigmas, kP);
    const double target = -6.0 * oracle::pi;
    for (std::size_t i = 1; i < v.size(); ++i) {
        EXPECT_LE(std::abs(v[i] - target), std::abs(v[i - 1] - target) + 1e-12);
    }
    EXPECT_NEAR(v.back(), target, 1e-6 * 6 * oracle::pi);
}

TEST(KazdanWarner, ConstantKGivesZero) {
    const auto U = explicit_U(kP);
    const auto r = kazdan_warner_radial(U, constant_field(kP, 1.0), kP, {32, 8.0});
    EXPECT_EQ(r.value, 0.0);
    EXPECT_FALSE(r.nonexistence);
    EXPECT_EQ(kazdan_warner_translation(U, constant_field(kP, 1.0), 0, kP, {32, 8.0}).value, 0.0);
    EXPECT_EQ(kazdan_warner_radial(constant_field(kP, 0.0), squared_norm_field(kP), kP, {32, 8.0}).value, 0.0);
}

TEST(KazdanWarner, DetectsNonexistence) {
    const auto U = explicit_U(kP);
    const auto r = kazdan_warner_radial(U, squared_norm_field(kP), kP);
    EXPECT_GT(r.value, 0.0);
    EXPECT_GT(r.value, 10.0 * r.quadrature_error);
    EXPECT_TRUE(r.nonexistence);
    const auto t = kazdan_warner_translation(U, coordinate_field(kP, 0), 0, kP);
    EXPECT_GT(t.value, 10.0 * t.quadrature_error);
    EXPECT_TRUE(t.nonexistence);
}

TEST(KazdanWarner, LinearInK) {
    const auto U = explicit_U(kP);
    const KazdanWarnerQuadrature q{32, 6.0};
    const auto K1 = squared_norm_field(kP);
    const auto K2 = coordinate_field(kP, 1);
    const double a = -0.7;
    const auto K = add_fields(scale_field(K1, a), K2);
    const double lhs = kazdan_warner_radial(U, K, kP, q).value;
    const double rhs = a * kazdan_warner_radial(U, K1, kP, q).value + kazdan_warner_radial(U, K2, kP, q).value;
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
    const auto T = add_fields(scale_field(coordinate_field(kP, 0), a), K1);
    const double tl = kazdan_warner_translation(U, T, 0, kP, q).value;
    const double tr = a * kazdan_warner_translation(U, coordinate_field(kP, 0), 0, kP, q).value +
                      kazdan_warner_translation(U, K1, 0, kP, q).value;
    EXPECT_NEAR(tl, tr, 1e-12 * std::abs(tl) + 1e-12);
}

TEST(KazdanWarner, NormalAxisRejected) {
    const auto U = explicit_U(kP);
    EXPECT_EQ(code_of([&] { kazdan_warner_translation(U, coordinate_field(kP, 2), 2, kP); }),
              ErrorCode::AxisOutOfRange);
}
