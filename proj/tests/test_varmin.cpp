#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "delab/analytic.hpp"
#include "delab/error.hpp"
#include "delab/varmin.hpp"
#include "delab/wgrid.hpp"
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

// One small ground-state run shared by several tests.
const GroundStateResult& small_run() {
    static const GroundStateResult r = minimize_rayleigh(random_positive_field(GridSpec::cube(16, 8.0), 42), kP);
    return r;
}

}  // namespace

TEST(Rayleigh, ScaleInvariant) {
    const auto spec = GridSpec::cube(16, 4.0);
    const auto u = random_positive_field(spec, 3);
    const double r = rayleigh(u, kP);
    for (double c : {2.0, -0.3, 1e3}) {
        GridField cu = u;
        for (auto& v : cu.values) v *= c;
        EXPECT_NEAR(rayleigh(cu, kP), r, 1e-12 * r);
    }
}

TEST(Rayleigh, ZeroFieldHasNoQuotient) {
    EXPECT_EQ(code_of([] { rayleigh(GridField(GridSpec::cube(8, 1.0), 0.0), kP); }), ErrorCode::ZeroDenominator);
    EXPECT_EQ(code_of([] { minimize_rayleigh(GridField(GridSpec::cube(8, 1.0), 0.0), kP); }),
              ErrorCode::ZeroDenominator);
}

TEST(Rayleigh, OfTheSampledSolutionIsAFiniteUpperBound) {
    const double r = rayleigh(sample(explicit_U(kP), GridSpec::cube(16, 8.0)), kP);
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_GT(r, 0.0);
    EXPECT_GE(r, small_run().rayleigh);
}

TEST(RandomPositiveField, ReproducibleAndPositive) {
    const auto spec = GridSpec::cube(8, 1.0);
    const auto a = random_positive_field(spec, 42), b = random_positive_field(spec, 42);
    EXPECT_EQ(a.values, b.values);
    for (double v : a.values) {
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_NE(random_positive_field(spec, 43).values, a.values);
}

TEST(MinimizeRayleigh, MonotoneAndNormalized) {
    const auto& r = small_run();
    EXPECT_TRUE(r.converged);
    ASSERT_GE(r.history.size(), 2u);
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1]);
    EXPECT_EQ(r.rayleigh, r.history.back());
    EXPECT_NEAR(weighted_lp(r.field, kP), 1.0, 1e-12);
    for (double v : r.field.values) EXPECT_GE(v, 0.0);
    EXPECT_NEAR(rayleigh(r.field, kP), r.rayleigh, 1e-12 * r.rayleigh);
}

TEST(MinimizeRayleigh, FromTheSampledSolutionDoesNotIncrease) {
    const auto u0 = sample(explicit_U(kP), GridSpec::cube(16, 8.0));
    MinimizerConfig cfg;
    cfg.max_iters = 20;
    const auto r = minimize_rayleigh(u0, kP, cfg);
    EXPECT_LE(r.rayleigh, rayleigh(u0, kP));
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1]);
}

TEST(MinimizeRayleigh, IterationCapReportsNotConverged) {
    MinimizerConfig cfg;
    cfg.max_iters = 2;
    const auto r = minimize_rayleigh(random_positive_field(GridSpec::cube(8, 4.0), 1), kP, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(code_of([&] { rescale_to_solution(r, kP); }), ErrorCode::NotConverged);
}

TEST(MinimizeRayleigh, DiscreteSobolevInequalityHolds) {
    // The minimum bounds the quotient of every other field on the same grid from below.
    const auto& r = small_run();
    const auto spec = r.field.spec;
    oracle::Points pts(5);
    for (int t = 0; t < 20; ++t) {
        GridField u(spec);
        for (auto& v : u.values) v = pts.uniform(-1.0, 1.0);
        EXPECT_GE(rayleigh(u, kP), r.rayleigh * (1.0 - 1e-9));
    }
    EXPECT_GE(rayleigh(default_initial_guess(spec), kP), r.rayleigh * (1.0 - 1e-9));
}

TEST(RescaleToSolution, ScaleAndResidual) {
    const auto& r = small_run();
    const auto s = rescale_to_solution(r, kP);
    EXPECT_NEAR(std::pow(s.scale, 8.0 / 3.0 - 2.0), r.rayleigh, 1e-10 * r.rayleigh);
    for (std::size_t i = 0; i < s.field.values.size(); ++i) {
        EXPECT_NEAR(s.field.values[i], s.scale * r.field.values[i], 1e-14 * s.scale);
    }
    EXPECT_LE(s.residual, 0.1);
}

TEST(RescaleToSolution, RecoversTheSampledSolution) {
    // An exact solution satisfies energy = lp integral, so the rescale of its normalized
    // samples returns the samples themselves up to discretization error. U does not vanish at
    // the box edge, so its quotient uses the Box closure rather than zero extension.
    auto deviation = [](int n) {
        const auto spec = GridSpec::cube(n, 8.0);
        const auto U = sample(explicit_U(kP), spec);
        const double lp = weighted_lp(U, kP);
        GroundStateResult r;
        r.field = U;
        for (auto& v : r.field.values) v /= std::pow(lp, 3.0 / 8.0);
        r.rayleigh = weighted_energy(U, kP, BoundaryClosure::Box) / std::pow(lp, 3.0 / 4.0);
        r.converged = true;
        return std::abs(rescale_to_solution(r, kP).scale / std::pow(lp, 3.0 / 8.0) - 1.0);
    };
    const double d32 = deviation(32), d64 = deviation(64);
    EXPECT_LE(d32, 0.1);
    EXPECT_LE(d64, 0.6 * d32) << d32 << " " << d64;
}

TEST(FitProfile, RecoversExactModel) {
    const std::vector<double> x0{0.3, -0.1};
    const auto t = trace_profile(kP, 1.0, 2.0, x0);
    TraceSamples s;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            const double a = -3.0 + 0.25 * (i + 0.5), b = -3.0 + 0.25 * (j + 0.5);
            s.points.push_back({a, b});
            s.values.push_back(t({a, b}));
        }
    const auto f = fit_profile(s, kP);
    EXPECT_NEAR(f.u0, 1.0, 1e-6);
    EXPECT_NEAR(f.family.lam, 2.0, 1e-6);
    ASSERT_EQ(f.family.zeta.size(), 2u);
    EXPECT_NEAR(f.family.zeta[0], 0.3, 1e-6);
    EXPECT_NEAR(f.family.zeta[1], -0.1, 1e-6);
    EXPECT_LE(f.misfit, 1e-10);
    EXPECT_FALSE(f.degenerate);
}

TEST(FitProfile, TraceOfSampledSolution) {
    const auto spec = GridSpec::cube(32, 8.0);
    const auto f = fit_profile(extract_trace(sample(explicit_U(kP), spec)), kP);
    const double h = spec.spacing(0);
    // The trace is read half a cell above the plane, where U(x', h/2) is exactly the
    // profile with lam = 1 / (1 + h/2).
    EXPECT_NEAR(f.family.lam, 1.0, 2 * h);
    EXPECT_NEAR(f.family.zeta[0], 0.0, 2 * h);
    EXPECT_NEAR(f.family.zeta[1], 0.0, 2 * h);
    EXPECT_NEAR(f.family.lam, 1.0 / (1.0 + h / 2), 1e-6);
}

TEST(FitProfile, ConstantAndZeroTraces) {
    TraceSamples s;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            s.points.push_back({i - 4.5, j - 4.5});
            s.values.push_back(2.0);
        }
    EXPECT_TRUE(fit_profile(s, kP).degenerate);
    for (auto& v : s.values) v = 0.0;
    EXPECT_EQ(code_of([&] { fit_profile(s, kP); }), ErrorCode::DegenerateTrace);
}

TEST(ExtractTrace, AveragesTheTwoCentralLayers) {
    const auto spec = GridSpec::cube(8, 2.0);
    GridField u(spec);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) u.at(i, j, k) = k;
    const auto t = extract_trace(u);
    ASSERT_EQ(t.values.size(), 64u);
    for (double v : t.values) EXPECT_DOUBLE_EQ(v, 3.5);
}
