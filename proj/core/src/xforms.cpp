#include "delab/xforms.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "delab/error.hpp"

namespace delab {

const char* to_string(TargetEquation t) noexcept {
    switch (t) {
        case TargetEquation::Anisotropic: return "anisotropic";
        case TargetEquation::Hardy: return "hardy";
        case TargetEquation::Ball: return "ball";
        case TargetEquation::Hyperbolic: return "hyperbolic";
        case TargetEquation::RadialOde: return "radial-ode";
    }
    return "unknown";
}

namespace {

double norm2(std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2;
}

// x_N^e for x_N >= 0; NaN below the hyperplane.
double upper_power(double xn, double e) {
    if (xn < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (xn == 0.0) return e == 0.0 ? 1.0 : 0.0;
    return std::pow(xn, e);
}

// Multiplies u by x_N^e on the upper half-space.
AnalyticField multiply_by_height_power(const AnalyticField& u, double e) {
    AnalyticField::GradientFn grad;
    if (u.has_gradient()) {
        grad = [u, e](std::span<const double> x, std::span<double> g) {
            const double xn = x.back();
            u.gradient(x, g);
            const double m = upper_power(xn, e);
            for (double& v : g) v *= m;
            g[g.size() - 1] += e * upper_power(xn, e - 1.0) * u(x);
        };
    }
    return AnalyticField(
        u.dim(), Domain::HalfSpacePositive, u.params(),
        [u, e](std::span<const double> x) {
            const double m = upper_power(x.back(), e);
            if (m == 0.0) return 0.0;
            return m * u(x);
        },
        std::move(grad));
}

double nonlinearity(double v, double pstar) {
    if (v == 0.0) return 0.0;
    return std::pow(std::abs(v), pstar - 2.0) * v;
}

double k_at(const TransformedField& tf, std::span<const double> y) {
    return tf.coefficient_K ? (*tf.coefficient_K)(y) : 1.0;
}

}  // namespace

AnalyticField kelvin(const AnalyticField& u, double lam, const ProblemParams& p) {
    if (!(lam > 0.0)) {
        throw Error(ErrorCode::NonpositiveDilation, "lambda = " + std::to_string(lam));
    }
    const double d = derive_exponents(p).decay_d;
    const double lam2 = lam * lam;
    const double amp = std::pow(lam, d);
    auto image = [lam2](std::span<const double> x, double r2) {
        Point y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = lam2 * x[i] / r2;
        return y;
    };
    AnalyticField::GradientFn grad;
    if (u.has_gradient()) {
        grad = [u, d, lam2, amp, image](std::span<const double> x, std::span<double> g) {
            const double r2 = norm2(x);
            const Point y = image(x, r2);
            std::vector<double> gy(x.size());
            u.gradient(y, gy);
            const double uy = u(y);
            double xg = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) xg += x[j] * gy[j];
            const double pref = amp * std::pow(r2, -0.5 * d);
            for (std::size_t i = 0; i < x.size(); ++i) {
                g[i] = pref * (-d * x[i] * uy / r2 + lam2 * (gy[i] / r2 - 2.0 * x[i] * xg / (r2 * r2)));
            }
        };
    }
    return AnalyticField(
        u.dim(), Domain::PuncturedAtOrigin, p,
        [u, d, amp, image](std::span<const double> x) {
            const double r2 = norm2(x);
            return amp * std::pow(std::sqrt(r2), -d) * u(image(x, r2));
        },
        std::move(grad));
}

AnalyticField inversion(const AnalyticField& u, const ProblemParams& p) { return kelvin(u, 1.0, p); }

TransformedField as_anisotropic(const AnalyticField& u, const ProblemParams& p, std::optional<AnalyticField> K) {
    return TransformedField{u, TargetEquation::Anisotropic, p, 0.0, std::move(K)};
}

TransformedField to_hardy(const AnalyticField& u, const ProblemParams& p, std::optional<AnalyticField> K) {
    const auto e = derive_exponents(p);
    return TransformedField{multiply_by_height_power(u, p.alpha), TargetEquation::Hardy, p, e.hardy_lambda,
                            std::move(K)};
}

TransformedField hyperbolic_lift(const AnalyticField& u, const ProblemParams& p, std::optional<AnalyticField> K) {
    const auto e = derive_exponents(p);
    const double mass = e.hardy_lambda + 0.25 * p.n * (p.n - 2);
    return TransformedField{multiply_by_height_power(u, 0.5 * e.decay_d), TargetEquation::Hyperbolic, p, mass,
                            std::move(K)};
}

TransformedField hyperbolic_lift(const TransformedField& hardy) {
    if (hardy.target != TargetEquation::Hardy) {
        throw Error(ErrorCode::InvalidArgument, "hyperbolic_lift expects a Hardy-side field");
    }
    const auto& p = hardy.params;
    const auto e = derive_exponents(p);
    const double mass = e.hardy_lambda + 0.25 * p.n * (p.n - 2);
    return TransformedField{multiply_by_height_power(hardy.field, 0.5 * (p.n - 2)), TargetEquation::Hyperbolic, p,
                            mass, hardy.coefficient_K};
}

Point ball_chart(std::span<const double> x) {
    const double r2 = norm2(x);
    const double den = 1.0 + 2.0 * x.back() + r2;
    if (den <= 1e-12) {
        throw Error(ErrorCode::SingularPoint, "ball chart denominator vanishes");
    }
    Point y(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = 2.0 * x[i] / den;
    y.back() = (1.0 - r2) / den;
    return y;
}

double ball_conformal_factor(std::span<const double> x) {
    const double den = 1.0 + 2.0 * x.back() + norm2(x);
    if (den <= 1e-12) {
        throw Error(ErrorCode::SingularPoint, "ball chart denominator vanishes");
    }
    return std::pow(2.0 / den, 0.5 * (static_cast<double>(x.size()) - 2.0));
}

TransformedField ball_map(const TransformedField& hardy) {
    if (hardy.target != TargetEquation::Hardy) {
        throw Error(ErrorCode::InvalidArgument, "ball_map expects a Hardy-side field");
    }
    const AnalyticField v = hardy.field;
    AnalyticField w(v.dim(), Domain::UnitBall, hardy.params, [v](std::span<const double> x) {
        const Point y = ball_chart(x);
        return v(y) * ball_conformal_factor(x);
    });
    return TransformedField{std::move(w), TargetEquation::Ball, hardy.params, 4.0 * hardy.linear_coefficient,
                            hardy.coefficient_K};
}

TransformedField ball_map(const AnalyticField& u, const ProblemParams& p, std::optional<AnalyticField> K) {
    return ball_map(to_hardy(u, p, std::move(K)));
}

RadialReduction radial_reduction(const ProblemParams& p) {
    require_subcritical(p);
    const auto e = derive_exponents(p);
    RadialReduction r{e.tau, e.k_dim, e.sigma_exp, std::pow(e.tau, e.sigma_exp)};
    const double lhs = (r.k_dim + 2.0 + 2.0 * r.sigma_exp) / (r.k_dim - 2.0);
    if (!(r.sigma_exp > -2.0) || !(lhs > e.pstar - 1.0)) {
        throw Error(ErrorCode::ReductionConditionFailed,
                    "sigma = " + std::to_string(r.sigma_exp) + ", (k+2+2sigma)/(k-2) = " + std::to_string(lhs));
    }
    return r;
}

TransformedField radial_ode_lift(const AnalyticField& u, const ProblemParams& p) {
    const RadialReduction red = radial_reduction(p);
    const int n = u.dim();
    const double tau = red.tau;
    AnalyticField lifted(red.k_dim, Domain::PuncturedAtOrigin, p, [u, n, tau](std::span<const double> z) {
        const double y = std::sqrt(norm2(z));
        Point x(static_cast<std::size_t>(n), 0.0);
        x.back() = std::pow(tau * y, 1.0 / tau);
        return u(x);
    });
    return TransformedField{std::move(lifted), TargetEquation::RadialOde, p, 0.0, std::nullopt};
}

double residual_at(const TransformedField& tf, std::span<const double> x, double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "step must be positive");
    }
    const auto& f = tf.field;
    if (static_cast<int>(x.size()) != f.dim()) {
        throw Error(ErrorCode::OutsideDomain, "point dimension mismatch");
    }
    const double r2 = norm2(x);
    const double r = std::sqrt(r2);
    const double xn = x.back();
    const double standoff = 2.0 * h;
    auto too_close = [](const char* what) { throw Error(ErrorCode::TooCloseToSingularSet, what); };

    switch (tf.target) {
        case TargetEquation::Anisotropic:
            if (!f.contains(x)) throw Error(ErrorCode::OutsideDomain, "point outside field domain");
            if (std::abs(xn) <= standoff) too_close("degenerate hyperplane x_N = 0");
            break;
        case TargetEquation::Hardy:
        case TargetEquation::Hyperbolic:
            if (xn <= 0.0) throw Error(ErrorCode::OutsideDomain, "upper half-space only");
            if (xn <= standoff) too_close("boundary x_N = 0");
            break;
        case TargetEquation::Ball:
            if (r >= 1.0) throw Error(ErrorCode::OutsideDomain, "unit ball only");
            if (1.0 - r <= standoff) too_close("unit sphere");
            break;
        case TargetEquation::RadialOde: break;
    }
    if ((f.domain() == Domain::PuncturedAtOrigin || tf.target == TargetEquation::RadialOde) && r <= standoff) {
        too_close("origin");
    }

    const auto e = derive_exponents(tf.params);
    const std::size_t n = x.size();
    Point y(x.begin(), x.end());
    const double u0 = f(x);
    const double h2 = h * h;

    // second differences and the x_N first difference
    double lap = 0.0;
    double dn = 0.0;
    double flux = 0.0;  // anisotropic flux form
    const double a2 = e.weight_a;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] + h;
        const double up = f(y);
        y[i] = x[i] - h;
        const double dw = f(y);
        y[i] = x[i];
        lap += (up - 2.0 * u0 + dw) / h2;
        if (i + 1 == n) dn = (up - dw) / (2.0 * h);
        if (tf.target == TargetEquation::Anisotropic) {
            double wp;
            double wm;
            if (i + 1 == n) {
                wp = std::pow(std::abs(xn + 0.5 * h), a2);
                wm = std::pow(std::abs(xn - 0.5 * h), a2);
            } else {
                wp = wm = std::pow(std::abs(xn), a2);
            }
            flux += (wp * (up - u0) - wm * (u0 - dw)) / h2;
        }
    }

    const double nl = nonlinearity(u0, e.pstar);
    switch (tf.target) {
        case TargetEquation::Anisotropic:
            return -flux - k_at(tf, x) * std::pow(std::abs(xn), e.weight_b) * nl;
        case TargetEquation::Hardy:
            return -lap - tf.linear_coefficient * u0 / (xn * xn) - k_at(tf, x) * nl / std::pow(xn, tf.params.s);
        case TargetEquation::Hyperbolic: {
            const double lap_h = xn * xn * lap - (static_cast<double>(n) - 2.0) * xn * dn;
            return -lap_h - tf.linear_coefficient * u0 - k_at(tf, x) * nl;
        }
        case TargetEquation::Ball: {
            const double q = 1.0 - r2;
            const Point hx = ball_chart(x);
            return -lap - tf.linear_coefficient * u0 / (q * q) -
                   std::pow(2.0, tf.params.s) * k_at(tf, hx) * nl / std::pow(q, tf.params.s);
        }
        case TargetEquation::RadialOde: {
            const double tau = e.tau;
            const double coeff = std::pow(tau, e.sigma_exp) * std::pow(r, e.sigma_exp);
            return -lap - coeff * nl;
        }
    }
    return 0.0;
}

}  // namespace delab
