#include "delab/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "delab/error.hpp"

namespace delab {

const char* to_string(Domain d) noexcept {
    switch (d) {
        case Domain::FullSpace: return "full-space";
        case Domain::HalfSpacePositive: return "half-space-positive";
        case Domain::PuncturedAtOrigin: return "punctured-at-origin";
        case Domain::UnitBall: return "unit-ball";
        case Domain::Hyperplane: return "hyperplane";
    }
    return "unknown";
}

AnalyticField::AnalyticField(int dim, Domain domain, ProblemParams params, ValueFn value, GradientFn gradient)
    : dim_(dim), domain_(domain), params_(params), value_(std::move(value)), gradient_(std::move(gradient)) {}

void AnalyticField::gradient(std::span<const double> x, std::span<double> out) const {
    if (!gradient_) {
        throw Error(ErrorCode::Unsupported, "field has no closed-form gradient");
    }
    gradient_(x, out);
}

std::vector<double> AnalyticField::gradient(std::span<const double> x) const {
    std::vector<double> g(static_cast<std::size_t>(dim_));
    gradient(x, g);
    return g;
}

bool AnalyticField::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    double r2 = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) return false;
        r2 += v * v;
    }
    switch (domain_) {
        case Domain::FullSpace:
        case Domain::Hyperplane: return true;
        case Domain::HalfSpacePositive: return x.back() >= 0.0;
        case Domain::PuncturedAtOrigin: return r2 > 0.0;
        case Domain::UnitBall: return r2 < 1.0;
    }
    return false;
}

namespace {

double norm2(std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2;
}

void require_explicit(const ProblemParams& p) {
    if (!in_explicit_regime(p)) {
        throw Error(ErrorCode::NotInExplicitRegime,
                    "closed form needs alpha = 1 and s = 1 + 2/N, got alpha = " + std::to_string(p.alpha) +
                        ", s = " + std::to_string(p.s));
    }
}

// D(x) = (1 + |x_N|)^2 + |x'|^2
double u_denominator(std::span<const double> x) {
    const std::size_t n = x.size();
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) d += x[i] * x[i];
    const double t = 1.0 + std::abs(x[n - 1]);
    return d + t * t;
}

double u_value(int n, std::span<const double> x) {
    return std::pow(2.0 * n / u_denominator(x), 0.5 * n);
}

void u_gradient(int n, std::span<const double> x, std::span<double> g) {
    const double den = u_denominator(x);
    const double u = std::pow(2.0 * n / den, 0.5 * n);
    const double f = -0.5 * n * u / den;  // dU/dD
    for (int i = 0; i + 1 < n; ++i) g[i] = f * 2.0 * x[i];
    const double xn = x[n - 1];
    if (xn == 0.0) {
        g[n - 1] = std::numeric_limits<double>::quiet_NaN();
    } else {
        g[n - 1] = f * 2.0 * (1.0 + std::abs(xn)) * (xn > 0.0 ? 1.0 : -1.0);
    }
}

}  // namespace

AnalyticField constant_field(const ProblemParams& p, double c) {
    return AnalyticField(
        p.n, Domain::FullSpace, p, [c](std::span<const double>) { return c; },
        [](std::span<const double>, std::span<double> g) {
            for (double& v : g) v = 0.0;
        });
}

AnalyticField coordinate_field(const ProblemParams& p, int axis) {
    if (axis < 0 || axis >= p.n) {
        throw Error(ErrorCode::AxisOutOfRange, "axis " + std::to_string(axis));
    }
    const auto a = static_cast<std::size_t>(axis);
    return AnalyticField(
        p.n, Domain::FullSpace, p, [a](std::span<const double> x) { return x[a]; },
        [a](std::span<const double>, std::span<double> g) {
            for (double& v : g) v = 0.0;
            g[a] = 1.0;
        });
}

AnalyticField squared_norm_field(const ProblemParams& p) {
    return AnalyticField(
        p.n, Domain::FullSpace, p, [](std::span<const double> x) { return norm2(x); },
        [](std::span<const double> x, std::span<double> g) {
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
        });
}

AnalyticField add_fields(const AnalyticField& a, const AnalyticField& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DomainMismatch, "adding fields of different dimension");
    }
    Domain dom = a.domain();
    if (dom == Domain::FullSpace) dom = b.domain();
    AnalyticField::GradientFn grad;
    if (a.has_gradient() && b.has_gradient()) {
        grad = [a, b](std::span<const double> x, std::span<double> g) {
            std::vector<double> gb(g.size());
            a.gradient(x, g);
            b.gradient(x, gb);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += gb[i];
        };
    }
    return AnalyticField(
        a.dim(), dom, a.params(), [a, b](std::span<const double> x) { return a(x) + b(x); }, std::move(grad));
}

AnalyticField scale_field(const AnalyticField& a, double c) {
    AnalyticField::GradientFn grad;
    if (a.has_gradient()) {
        grad = [a, c](std::span<const double> x, std::span<double> g) {
            a.gradient(x, g);
            for (double& v : g) v *= c;
        };
    }
    return AnalyticField(
        a.dim(), a.domain(), a.params(), [a, c](std::span<const double> x) { return c * a(x); }, std::move(grad));
}

AnalyticField translated(const AnalyticField& f, std::span<const double> shift) {
    if (static_cast<int>(shift.size()) != f.dim()) {
        throw Error(ErrorCode::DomainMismatch, "shift length differs from field dimension");
    }
    Point s(shift.begin(), shift.end());
    auto moved = [s](std::span<const double> x) {
        Point y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - s[i];
        return y;
    };
    AnalyticField::GradientFn grad;
    if (f.has_gradient()) {
        grad = [f, moved](std::span<const double> x, std::span<double> g) { f.gradient(moved(x), g); };
    }
    // A translated punctured field is no longer punctured at the origin; report it as full-space
    // only when the shift keeps the singular point away, which the caller controls.
    const Domain dom = f.domain() == Domain::PuncturedAtOrigin ? Domain::FullSpace : f.domain();
    return AnalyticField(
        f.dim(), dom, f.params(), [f, moved](std::span<const double> x) { return f(moved(x)); }, std::move(grad));
}

AnalyticField explicit_U(const ProblemParams& p) {
    require_explicit(p);
    const int n = p.n;
    return AnalyticField(
        n, Domain::FullSpace, p, [n](std::span<const double> x) { return u_value(n, x); },
        [n](std::span<const double> x, std::span<double> g) { u_gradient(n, x, g); });
}

AnalyticField family_member(const ProblemParams& p, const FamilyParameters& fp) {
    require_explicit(p);
    if (!(fp.lam > 0.0)) {
        throw Error(ErrorCode::NonpositiveDilation, "lambda = " + std::to_string(fp.lam));
    }
    const int n = p.n;
    std::vector<double> zeta = fp.zeta;
    if (zeta.empty()) zeta.assign(static_cast<std::size_t>(n - 1), 0.0);
    if (static_cast<int>(zeta.size()) != n - 1) {
        throw Error(ErrorCode::InvalidArgument, "zeta must have N-1 components");
    }
    const double lam = fp.lam;
    const double amp = std::pow(lam, 0.5 * n);
    auto map = [lam, zeta](std::span<const double> x) {
        Point y(x.size());
        for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = lam * x[i] + zeta[i];
        y.back() = lam * x.back();
        return y;
    };
    return AnalyticField(
        n, Domain::FullSpace, p, [n, amp, map](std::span<const double> x) { return amp * u_value(n, map(x)); },
        [n, amp, lam, map](std::span<const double> x, std::span<double> g) {
            u_gradient(n, map(x), g);
            for (double& v : g) v *= amp * lam;
        });
}

AnalyticField trace_profile(const ProblemParams& p, double u0, double lam, std::span<const double> x0) {
    if (!(u0 > 0.0)) {
        throw Error(ErrorCode::NonpositiveAmplitude, "u0 = " + std::to_string(u0));
    }
    if (!(lam > 0.0)) {
        throw Error(ErrorCode::NonpositiveDilation, "lambda = " + std::to_string(lam));
    }
    if (static_cast<int>(x0.size()) != p.n - 1) {
        throw Error(ErrorCode::InvalidArgument, "x0 must have N-1 components");
    }
    const double half_d = 0.5 * derive_exponents(p).decay_d;
    Point c(x0.begin(), x0.end());
    const double lam2 = lam * lam;
    auto value = [u0, lam2, half_d, c](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
        return u0 * std::pow(1.0 + lam2 * r2, -half_d);
    };
    auto grad = [u0, lam2, half_d, c](std::span<const double> x, std::span<double> g) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
        const double q = 1.0 + lam2 * r2;
        const double f = -half_d * u0 * std::pow(q, -half_d - 1.0) * 2.0 * lam2;
        for (std::size_t i = 0; i < c.size(); ++i) g[i] = f * (x[i] - c[i]);
    };
    return AnalyticField(p.n - 1, Domain::Hyperplane, p, value, grad);
}

double power_divergence_coefficient(const ProblemParams& p, double l) {
    // Written against decay_d itself so the root l = decay_d is exact in floating point.
    return l * (l - (p.n - 2.0 + 2.0 * p.alpha));
}

AnalyticField power_solution(const ProblemParams& p, double l) {
    return AnalyticField(
        p.n, Domain::PuncturedAtOrigin, p, [l](std::span<const double> x) { return std::pow(norm2(x), -0.5 * l); },
        [l](std::span<const double> x, std::span<double> g) {
            const double r2 = norm2(x);
            const double f = -l * std::pow(r2, -0.5 * l - 1.0);
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = f * x[i];
        });
}

std::vector<AnalyticField> linearized_kernel(const ProblemParams& p) {
    require_explicit(p);
    const int n = p.n;
    std::vector<AnalyticField> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) {
        const auto a = static_cast<std::size_t>(i);
        out.emplace_back(n, Domain::FullSpace, p, [n, a](std::span<const double> x) {
            const double den = u_denominator(x);
            return -0.5 * n * u_value(n, x) / den * 2.0 * x[a];
        });
    }
    // x . grad U = dU/dD * (2|x'|^2 + 2(1+|x_N|)|x_N|), continuous across x_N = 0.
    out.emplace_back(n, Domain::FullSpace, p, [n](std::span<const double> x) {
        const double den = u_denominator(x);
        const double u = u_value(n, x);
        double xp2 = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) xp2 += x[i] * x[i];
        const double t = std::abs(x.back());
        const double x_dot_grad = -0.5 * n * u / den * (2.0 * xp2 + 2.0 * (1.0 + t) * t);
        return 0.5 * n * u + x_dot_grad;
    });
    return out;
}

}  // namespace delab
