#include "studies.hpp"

#include <algorithm>
#include <cmath>

#include "delab/analytic.hpp"
#include "delab/error.hpp"
#include "delab/identities.hpp"

namespace delab::cli {

Norm parse_norm(const std::string& name) {
    if (name == "l1") return Norm::L1;
    if (name == "l2") return Norm::L2;
    if (name == "max") return Norm::Max;
    throw Error(ErrorCode::InvalidArgument, "unknown norm '" + name + "'");
}

const char* to_string(Norm n) noexcept {
    switch (n) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::Max: return "max";
    }
    return "unknown";
}

double reduce(const std::vector<double>& r, Norm n) {
    if (r.empty()) throw Error(ErrorCode::InvalidArgument, "no cells selected for the residual");
    double acc = 0.0;
    for (double v : r) {
        switch (n) {
            case Norm::L1: acc += std::abs(v); break;
            case Norm::L2: acc += v * v; break;
            case Norm::Max: acc = std::max(acc, std::abs(v)); break;
        }
    }
    const double cnt = static_cast<double>(r.size());
    if (n == Norm::L1) return acc / cnt;
    if (n == Norm::L2) return std::sqrt(acc / cnt);
    return acc;
}

std::vector<double> power_residuals(const GridSpec& spec, const ProblemParams& p) {
    const double d = derive_exponents(p).decay_d;
    const GridField u = sample(power_solution(p, d), spec);
    const GridField Lu = apply_L(u, p);
    std::vector<double> out;
    const auto& n = spec.dims;
    for (int i = 0; i < n[0]; ++i) {
        for (int j = 0; j < n[1]; ++j) {
            for (int k = 0; k < n[2]; ++k) {
                const auto x = spec.point(i, j, k);
                const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
                if (spec.on_boundary_ring(i, j, k) || r < 1.0 || r > 2.0 || std::abs(x[2]) <= 0.2) continue;
                out.push_back(Lu.at(i, j, k) * std::pow(r, d + 2.0));
            }
        }
    }
    return out;
}

std::vector<double> explicit_residuals(const GridSpec& spec, const ProblemParams& p, double band) {
    if (!in_explicit_regime(p)) throw Error(ErrorCode::NotInExplicitRegime, "explicit residual needs the U regime");
    const DerivedExponents e = derive_exponents(p);
    const GridField u = sample(explicit_U(p), spec);
    const GridField Lu = apply_L(u, p);
    std::vector<double> out;
    const auto& n = spec.dims;
    for (int i = 0; i < n[0]; ++i) {
        for (int j = 0; j < n[1]; ++j) {
            for (int k = 0; k < n[2]; ++k) {
                const double xn = spec.center(2, k);
                if (spec.on_boundary_ring(i, j, k) || std::abs(xn) <= band) continue;
                const double v = u.at(i, j, k);
                out.push_back(Lu.at(i, j, k) - std::pow(std::abs(xn), e.weight_b) * std::pow(v, e.pstar - 1.0));
            }
        }
    }
    return out;
}

double pohozaev_relative_residual(int grid, const ProblemParams& p) {
    if (!in_explicit_regime(p)) throw Error(ErrorCode::NotInExplicitRegime, "Pohozaev study needs the U regime");
    const PohozaevQuadrature q{2 * grid, std::max(2, grid / 4)};
    const PohozaevReport r = pohozaev_check(explicit_U(p), constant_field(p, 1.0), 1.0, p, q);
    return std::abs(r.residual) / r.max_abs_term();
}

std::vector<StudyRow> convergence_study(const std::string& quantity, const std::vector<int>& grids, double half_width,
                                        const ProblemParams& p, Norm norm) {
    if (grids.size() < 2) throw Error(ErrorCode::InvalidArgument, "a convergence study needs at least two grids");
    if (quantity != "apply-L-power" && quantity != "explicit-residual" && quantity != "pohozaev-residual") {
        throw Error(ErrorCode::InvalidArgument, "unknown quantity '" + quantity + "'");
    }
    std::vector<StudyRow> rows;
    for (int g : grids) {
        StudyRow row;
        row.grid = g;
        if (quantity == "pohozaev-residual") {
            row.h = 1.0 / g;
            row.residual = pohozaev_relative_residual(g, p);
        } else {
            const GridSpec spec = GridSpec::cube(g, half_width);
            row.h = spec.spacing(0);
            row.residual = reduce(quantity == "apply-L-power" ? power_residuals(spec, p) : explicit_residuals(spec, p),
                                  norm);
        }
        if (!rows.empty()) row.order = std::log(rows.back().residual / row.residual) / std::log(rows.back().h / row.h);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace delab::cli
