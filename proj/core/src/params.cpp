#include "delab/params.hpp"

#include <cmath>
#include <string>

#include "delab/error.hpp"

namespace delab {

ProblemParams validate_params(int n, double alpha, double s) {
    if (n < 3) {
        throw Error(ErrorCode::DimensionTooSmall, "N = " + std::to_string(n) + " (need N >= 3)");
    }
    if (!std::isfinite(alpha) || alpha <= 0.5) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha = " + std::to_string(alpha) + " (need alpha > 1/2)");
    }
    if (!std::isfinite(s) || s < 0.0 || s > 2.0) {
        throw Error(ErrorCode::SOutOfRange, "s = " + std::to_string(s) + " (need 0 <= s <= 2)");
    }
    return ProblemParams{n, alpha, s};
}

void require_subcritical(const ProblemParams& p) {
    validate_params(p.n, p.alpha, p.s);
    if (p.s >= 2.0) {
        throw Error(ErrorCode::SOutOfRange, "s = 2 not admitted here (need s < 2)");
    }
}

DerivedExponents derive_exponents(const ProblemParams& p) {
    const double n = p.n;
    DerivedExponents e{};
    e.pstar = 2.0 * (n - p.s) / (n - 2.0);
    e.weight_a = 2.0 * p.alpha;
    e.weight_b = p.alpha * e.pstar - p.s;
    e.decay_d = n - 2.0 + 2.0 * p.alpha;
    e.hardy_lambda = -p.alpha * (p.alpha - 1.0);
    const double fl = std::floor(2.0 * p.alpha);
    e.tau = (2.0 * p.alpha - 1.0) / fl;
    e.k_dim = static_cast<int>(fl) + 2;
    e.beta = e.weight_b - 2.0 * p.alpha;
    e.sigma_exp = (e.beta - 2.0 * (e.tau - 1.0)) / e.tau;
    return e;
}

bool in_explicit_regime(const ProblemParams& p, double tol) {
    return std::abs(p.alpha - 1.0) <= tol && std::abs(p.s - (1.0 + 2.0 / p.n)) <= tol;
}

}  // namespace delab
