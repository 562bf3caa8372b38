#pragma once

namespace delab {

/// The parameter triple of the degenerate critical equation
///   -div(|x_N|^{2 alpha} grad u) = |x_N|^{alpha p - s} |u|^{p-2} u,
/// with p the critical exponent 2(N-s)/(N-2).
///
/// Construct through validate_params(); the raw aggregate is kept public so
/// values can be copied around freely, but only validated instances should be
/// handed to the rest of the library.
struct ProblemParams {
    int n = 3;
    double alpha = 1.0;
    double s = 0.0;
};

/// Every exponent derived from (N, alpha, s).
struct DerivedExponents {
    double pstar;         // 2(N-s)/(N-2)
    double weight_a;      // 2 alpha, gradient weight exponent
    double weight_b;      // alpha * pstar - s, nonlinearity weight exponent
    double decay_d;       // N - 2 + 2 alpha
    double hardy_lambda;  // -alpha(alpha - 1)
    double tau;           // (2 alpha - 1) / floor(2 alpha)
    int k_dim;            // floor(2 alpha) + 2
    double beta;          // weight_b - 2 alpha
    double sigma_exp;     // (beta - 2(tau - 1)) / tau
};

/// Throws Error{DimensionTooSmall | AlphaOutOfRange | SOutOfRange}.
/// s = 2 is admitted here; operations that need s < 2 call require_subcritical().
ProblemParams validate_params(int n, double alpha, double s);

/// Rejects s = 2 (and anything invalid) with SOutOfRange.
void require_subcritical(const ProblemParams& p);

DerivedExponents derive_exponents(const ProblemParams& p);

/// alpha = 1 and s = 1 + 2/N, the regime with a closed-form solution.
bool in_explicit_regime(const ProblemParams& p, double tol = 1e-12);

}  // namespace delab
