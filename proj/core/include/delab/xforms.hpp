#pragma once

#include <optional>
#include <span>

#include "delab/analytic.hpp"

namespace delab {

/// Which equation a transformed field is expected to solve.
enum class TargetEquation {
    Anisotropic,  // -div(|x_N|^{2a} grad u) = K |x_N|^b |u|^{p-2} u          in R^N
    Hardy,        // -Lap v = lambda_H v / x_N^2 + K |v|^{p-2} v / x_N^s       in R^N_+
    Ball,         // -Lap w = 4 lambda_H w / (1-|x|^2)^2 + 2^s (K o H) |w|^{p-2} w / (1-|x|^2)^s   in B_1
    Hyperbolic,   // -Lap_H w = (lambda_H + N(N-2)/4) w + K |w|^{p-2} w,  Lap_H = x_N^2 Lap - (N-2) x_N d_N
    RadialOde,    // -Lap u = tau^sigma |x|^sigma |u|^{p-2} u                  in R^k
};

const char* to_string(TargetEquation t) noexcept;

struct TransformedField {
    AnalyticField field;
    TargetEquation target;
    ProblemParams params;
    /// Coefficient multiplying the linear term of the target equation: lambda_H for Hardy,
    /// 4 lambda_H for Ball, lambda_H + N(N-2)/4 for Hyperbolic, 0 otherwise.
    double linear_coefficient = 0.0;
    /// K in the target equation, in half-space coordinates for Hardy/Ball/Hyperbolic.
    /// Empty means K = 1.
    std::optional<AnalyticField> coefficient_K;
};

/// u_lam(x) = lam^d |x|^{-d} u(lam^2 x / |x|^2), d = N - 2 + 2 alpha.
AnalyticField kelvin(const AnalyticField& u, double lam, const ProblemParams& p);

/// kelvin with lam = 1.
AnalyticField inversion(const AnalyticField& u, const ProblemParams& p);

/// Anisotropic-side u (solving the Anisotropic target) viewed as its own target.
TransformedField as_anisotropic(const AnalyticField& u, const ProblemParams& p,
                                std::optional<AnalyticField> K = std::nullopt);

/// v = x_N^alpha u on the upper half-space.
TransformedField to_hardy(const AnalyticField& u, const ProblemParams& p,
                          std::optional<AnalyticField> K = std::nullopt);

/// W = x_N^{(N-2+2 alpha)/2} u for an anisotropic-side u.
TransformedField hyperbolic_lift(const AnalyticField& u, const ProblemParams& p,
                                 std::optional<AnalyticField> K = std::nullopt);

/// W = x_N^{(N-2)/2} v for a Hardy-side v; agrees with the overload above on to_hardy(u).
TransformedField hyperbolic_lift(const TransformedField& hardy);

/// H(x) = (2x' / (1 + 2x_N + |x|^2), (1 - |x|^2) / (1 + 2x_N + |x|^2)).
/// Throws SingularPoint when the denominator is <= 1e-12.
Point ball_chart(std::span<const double> x);

/// rho(x) = (2 / (1 + 2x_N + |x|^2))^{(N-2)/2}.
double ball_conformal_factor(std::span<const double> x);

/// w = (v o H) rho on the unit ball, for a Hardy-side v.
TransformedField ball_map(const TransformedField& hardy);

/// ball_map(to_hardy(u)).
TransformedField ball_map(const AnalyticField& u, const ProblemParams& p,
                          std::optional<AnalyticField> K = std::nullopt);

struct RadialReduction {
    double tau;
    int k_dim;
    double sigma_exp;
    double coefficient;  // tau^sigma
};

/// Reduction of -(r^{2a} f')' = r^b f^{p-1} to -Lap u = tau^sigma |x|^sigma u^{p-1} in R^k.
/// Throws SOutOfRange for s = 2 and ReductionConditionFailed when sigma <= -2 or
/// (k + 2 + 2 sigma)/(k - 2) <= p - 1.
RadialReduction radial_reduction(const ProblemParams& p);

/// z in R^k -> u(0, ..., 0, (tau |z|)^{1/tau}); u is read along the positive x_N axis.
TransformedField radial_ode_lift(const AnalyticField& u, const ProblemParams& p);

/// Centered-difference residual (left side minus right side) of the target equation at x.
/// Throws OutsideDomain or TooCloseToSingularSet (standoff 2h).
double residual_at(const TransformedField& tf, std::span<const double> x, double h);

}  // namespace delab
