#include <cmath>

#include <gtest/gtest.h>

#include "delab/varmin.hpp"

using namespace delab;

// Roughly a minute: the 48^3 run dominates.
TEST(GroundState, ConstantStableUnderRefinement) {
    const auto p = validate_params(3, 1.0, 5.0 / 3.0);
    const auto coarse = minimize_rayleigh(random_positive_field(GridSpec::cube(32, 8.0), 42), p);
    const auto fine = minimize_rayleigh(random_positive_field(GridSpec::cube(48, 8.0), 42), p);
    ASSERT_TRUE(coarse.converged);
    ASSERT_TRUE(fine.converged);
    EXPECT_LE(std::abs(coarse.rayleigh - fine.rayleigh) / fine.rayleigh, 0.10);

    const auto rc = rescale_to_solution(coarse, p);
    const auto rf = rescale_to_solution(fine, p);
    EXPECT_LE(rc.residual, 0.1);
    EXPECT_LE(rf.residual, 0.1);
    ASSERT_TRUE(fine.fitted_profile.has_value());
    EXPECT_LE(fine.fitted_profile->misfit, 0.05);
}
