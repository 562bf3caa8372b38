#pragma once

// Test-side reference computations. Nothing here calls into the library, so
// agreement with it is evidence rather than a tautology.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Fn3 = std::function<double(const std::array<double, 3>&)>;

inline constexpr double pi = 3.14159265358979323846;

/// The closed-form solution for N = 3, alpha = 1, s = 5/3, written out directly.
inline double U3(const std::array<double, 3>& x) {
    const double a = 1.0 + std::abs(x[2]);
    return std::pow(6.0 / (a * a + x[0] * x[0] + x[1] * x[1]), 1.5);
}

inline double norm3(const std::array<double, 3>& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

inline std::array<double, 3> shifted(std::array<double, 3> x, int axis, double t) {
    x[static_cast<std::size_t>(axis)] += t;
    return x;
}

inline double fd_partial(const Fn3& f, const std::array<double, 3>& x, int axis, double h) {
    return (f(shifted(x, axis, h)) - f(shifted(x, axis, -h))) / (2.0 * h);
}

inline double fd_laplacian(const Fn3& f, const std::array<double, 3>& x, double h) {
    const double c = f(x);
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += f(shifted(x, a, h)) - 2.0 * c + f(shifted(x, a, -h));
    return s / (h * h);
}

/// div(|x_3|^{2 alpha} grad f) by flux differences with the weight at half points.
inline double fd_weighted_div(const Fn3& f, const std::array<double, 3>& x, double alpha, double h) {
    const double c = f(x);
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double wp = std::pow(std::abs(x[2] + (a == 2 ? 0.5 * h : 0.0)), 2.0 * alpha);
        const double wm = std::pow(std::abs(x[2] - (a == 2 ? 0.5 * h : 0.0)), 2.0 * alpha);
        s += wp * (f(shifted(x, a, h)) - c) - wm * (c - f(shifted(x, a, -h)));
    }
    return s / (h * h);
}

/// Exact integral of x^a y^b z^c over the unit sphere.
inline double sphere_monomial(int a, int b, int c) {
    if (a % 2 || b % 2 || c % 2) return 0.0;
    const double ga = std::tgamma((a + 1) / 2.0), gb = std::tgamma((b + 1) / 2.0), gc = std::tgamma((c + 1) / 2.0);
    return 2.0 * ga * gb * gc / std::tgamma((a + b + c + 3) / 2.0);
}

/// Composite Simpson rule, n even.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// splitmix64, for test point generation independent of the library's generator.
struct Points {
    std::uint64_t state;
    explicit Points(std::uint64_t seed) : state(seed) {}
    double uniform(double lo, double hi) {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return lo + (hi - lo) * static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    std::array<double, 3> in_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
};

}  // namespace oracle
