#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "delab/params.hpp"

namespace delab {

using Point = std::vector<double>;

enum class Domain {
    FullSpace,
    HalfSpacePositive,  // x_N >= 0
    PuncturedAtOrigin,  // R^N \ {0}
    UnitBall,           // |x| < 1
    Hyperplane,         // fields on {x_N = 0}, evaluated at x' in R^{N-1}
};

const char* to_string(Domain d) noexcept;

/// A closed-form scalar field with an optional closed-form gradient.
///
/// The evaluator receives a point of length dim(). Gradients, when present,
/// write dim() components; a NaN component marks a direction in which the
/// field is not differentiable at that point (e.g. d/dx_N of U on x_N = 0).
class AnalyticField {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

    AnalyticField(int dim, Domain domain, ProblemParams params, ValueFn value, GradientFn gradient = {});

    double operator()(std::span<const double> x) const { return value_(x); }
    double operator()(std::initializer_list<double> x) const {
        return value_(std::span<const double>(x.begin(), x.size()));
    }

    bool has_gradient() const noexcept { return static_cast<bool>(gradient_); }
    void gradient(std::span<const double> x, std::span<double> out) const;
    std::vector<double> gradient(std::span<const double> x) const;
    std::vector<double> gradient(std::initializer_list<double> x) const {
        return gradient(std::span<const double>(x.begin(), x.size()));
    }

    int dim() const noexcept { return dim_; }
    Domain domain() const noexcept { return domain_; }
    const ProblemParams& params() const noexcept { return params_; }

    /// Whether x lies in the set described by the domain tag.
    bool contains(std::span<const double> x) const;

    const ValueFn& value_fn() const noexcept { return value_; }
    const GradientFn& gradient_fn() const noexcept { return gradient_; }

private:
    int dim_;
    Domain domain_;
    ProblemParams params_;
    ValueFn value_;
    GradientFn gradient_;
};

/// Dilation and x'-translation parameters of the solution family.
struct FamilyParameters {
    double lam = 1.0;
    std::vector<double> zeta;  // length N-1; empty means zero
};

// -- elementary fields -------------------------------------------------------

AnalyticField constant_field(const ProblemParams& p, double c);

/// x_axis (0-based axis index).
AnalyticField coordinate_field(const ProblemParams& p, int axis);

/// |x|^2.
AnalyticField squared_norm_field(const ProblemParams& p);

AnalyticField add_fields(const AnalyticField& a, const AnalyticField& b);
AnalyticField scale_field(const AnalyticField& a, double c);

/// x -> f(x - shift).
AnalyticField translated(const AnalyticField& f, std::span<const double> shift);

// -- closed-form solutions -----------------------------------------------------

/// U(x', x_N) = (2N / ((1 + |x_N|)^2 + |x'|^2))^{N/2}; requires alpha = 1, s = 1 + 2/N.
AnalyticField explicit_U(const ProblemParams& p);

/// lam^{N/2} U(lam x' + zeta, lam x_N).
AnalyticField family_member(const ProblemParams& p, const FamilyParameters& fp);

/// u0 (1 + lam^2 |x' - x0|^2)^{-(N-2+2 alpha)/2} on the hyperplane.
AnalyticField trace_profile(const ProblemParams& p, double u0, double lam, std::span<const double> x0);

/// c(l) = l (l + 2 - N - 2 alpha), so that div(|x_N|^{2a} grad |x|^{-l}) = c(l) |x_N|^{2a} |x|^{-l-2}.
double power_divergence_coefficient(const ProblemParams& p, double l);

/// |x|^{-l} on the punctured space, with exact gradient.
AnalyticField power_solution(const ProblemParams& p, double l);

/// V_1..V_{N-1} = dU/dx_i and V_N = (N/2) U + x . grad U. Gradients are not provided.
std::vector<AnalyticField> linearized_kernel(const ProblemParams& p);

}  // namespace delab
