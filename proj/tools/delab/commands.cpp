#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "delab/analytic.hpp"
#include "delab/awf_io.hpp"
#include "delab/identities.hpp"
#include "delab/parallel.hpp"
#include "delab/varmin.hpp"
#include "delab/xforms.hpp"
#include "studies.hpp"
#include "suites.hpp"

namespace delab::cli {

namespace {

struct Common {
    int n = 3;
    double alpha = 1.0;
    double s = 1.6666667;
    int grid = 32;
    double half_width = 8.0;
    std::uint64_t seed = 42;
    int threads = -1;
    std::string report;
};

void add_common(CLI::App* sub, Common& c, bool param_lists, std::string* alpha_list, std::string* s_list) {
    sub->add_option("--n", c.n, "Dimension N")->capture_default_str();
    if (param_lists) {
        sub->add_option("--alpha", *alpha_list, "Comma-separated alpha values")->capture_default_str();
        sub->add_option("--s", *s_list, "Comma-separated s values")->capture_default_str();
    } else {
        sub->add_option("--alpha", c.alpha, "Weight exponent alpha")->capture_default_str();
        sub->add_option("--s", c.s, "Singularity exponent s")->capture_default_str();
    }
    sub->add_option("--grid", c.grid, "Cells per axis")->capture_default_str();
    sub->add_option("--L", c.half_width, "Box half-width")->capture_default_str();
    sub->add_option("--seed", c.seed, "Seed of the LCG random stream")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker cap (default: DELAB_THREADS, else hardware)");
    sub->add_option("--report", c.report, "Also write the report to this path");
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    f << text;
}

ProblemParams params_from(const Common& c) { return validate_params(c.n, c.alpha, snap_s(c.n, c.s)); }

int cmd_verify(const Common& c, const std::string& suite, std::ostream& out) {
    Settings s;
    s.params = params_from(c);
    if (c.grid < 4 || c.grid % 2 != 0) throw Error(ErrorCode::InvalidArgument, "--grid must be an even integer >= 4");
    s.grid = c.grid;
    s.half_width = c.half_width;
    s.seed = c.seed;
    if (suite == "pohozaev" || suite == "all") require_subcritical(s.params);
    const SuiteReport r = run_suite(suite, s);
    const std::string text = r.to_json().dump(2) + "\n";
    out << text;
    if (!c.report.empty()) write_text(c.report, text);
    return r.fail_count() == 0 ? 0 : 1;
}

int cmd_best_constant(const Common& c, const std::string& alphas_text, const std::string& ss_text, int max_iters,
                      std::ostream& out) {
    const std::vector<double> alphas = parse_number_list(alphas_text);
    const std::vector<double> ss = parse_number_list(ss_text);
    std::vector<ProblemParams> cells;
    for (double a : alphas) {
        for (double s : ss) {
            ProblemParams p = validate_params(c.n, a, snap_s(c.n, s));
            require_subcritical(p);
            cells.push_back(p);
        }
    }
    if (c.n != 3) throw Error(ErrorCode::Unsupported, "gridded minimization runs in N = 3");
    const GridSpec spec = GridSpec::cube(c.grid, c.half_width);
    const GridField start = random_positive_field(spec, c.seed);
    MinimizerConfig cfg;
    cfg.max_iters = max_iters;

    std::ostringstream csv;
    csv << "alpha,s,N,dims,L,rayleigh,iters,converged\n";
    int converged = 0;
    for (const ProblemParams& p : cells) {
        double rq = std::nan("");
        int iters = 0;
        bool ok = false;
        try {
            const GroundStateResult r = minimize_rayleigh(start, p, cfg);
            rq = r.rayleigh;
            iters = r.iterations;
            ok = r.converged;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroDenominator && e.code() != ErrorCode::NoConvergence) throw;
        }
        converged += ok ? 1 : 0;
        csv << fmt17(p.alpha) << ',' << fmt17(p.s) << ',' << p.n << ',' << c.grid << 'x' << c.grid << 'x' << c.grid
            << ',' << fmt17(c.half_width) << ',' << fmt17(rq) << ',' << iters << ',' << (ok ? "true" : "false") << '\n';
    }
    out << csv.str();
    if (!c.report.empty()) write_text(c.report, csv.str());
    return converged > 0 ? 0 : 1;
}

enum class Side { Anisotropic, Hardy, Terminal };

struct TransformCounts {
    std::size_t zero_filled = 0;
    std::size_t singular = 0;
};

const char* side_error(Side s) {
    return s == Side::Terminal ? "no operation may follow hyperbolic or ball" : "kelvin needs an anisotropic-side field";
}

// Closed-form composition on analytic fields, then sampling.
GridField transform_analytic(const std::string& name, const std::vector<std::string>& ops, double lam,
                             const ProblemParams& p, const GridSpec& spec, TransformCounts& counts) {
    std::optional<AnalyticField> field;
    if (name == "explicit-U") {
        if (!in_explicit_regime(p)) throw Error(ErrorCode::NotInExplicitRegime, "explicit-U needs s = 1 + 2/N, alpha = 1");
        field = explicit_U(p);
    } else if (name == "power") {
        field = power_solution(p, derive_exponents(p).decay_d);
    } else if (name == "const") {
        field = constant_field(p, 1.0);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown field '" + name + "' (explicit-U, power, const)");
    }
    Side side = Side::Anisotropic;
    std::optional<TransformedField> hardy;
    for (const auto& op : ops) {
        if (side == Side::Terminal) throw Error(ErrorCode::InvalidArgument, side_error(side));
        if (op == "kelvin" || op == "inversion") {
            if (side != Side::Anisotropic) throw Error(ErrorCode::InvalidArgument, side_error(side));
            field = kelvin(*field, op == "kelvin" ? lam : 1.0, p);
        } else if (op == "hardy") {
            if (side != Side::Anisotropic) throw Error(ErrorCode::InvalidArgument, "hardy needs an anisotropic-side field");
            hardy = to_hardy(*field, p);
            field = hardy->field;
            side = Side::Hardy;
        } else if (op == "hyperbolic") {
            field = (side == Side::Hardy ? hyperbolic_lift(*hardy) : hyperbolic_lift(*field, p)).field;
            side = Side::Terminal;
        } else if (op == "ball") {
            field = (side == Side::Hardy ? ball_map(*hardy) : ball_map(*field, p)).field;
            side = Side::Terminal;
        } else {
            throw Error(ErrorCode::InvalidArgument, "unknown op '" + op + "'");
        }
    }
    GridField out(spec);
    const auto& d = spec.dims;
    for (int i = 0; i < d[0]; ++i) {
        for (int j = 0; j < d[1]; ++j) {
            for (int k = 0; k < d[2]; ++k) {
                const auto x = spec.point(i, j, k);
                if (!field->contains(x)) {
                    ++counts.zero_filled;
                    continue;
                }
                double v = 0.0;
                try {
                    v = (*field)(x);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::SingularPoint) throw;
                    ++counts.singular;
                    continue;
                }
                if (!std::isfinite(v)) {
                    ++counts.singular;
                    continue;
                }
                out.at(i, j, k) = v;
            }
        }
    }
    return out;
}

bool in_hull(const GridSpec& spec, std::span<const double> y) {
    for (int a = 0; a < 3; ++a) {
        const double lo = spec.center(a, 0);
        const double hi = spec.center(a, spec.dims[static_cast<std::size_t>(a)] - 1);
        if (y[static_cast<std::size_t>(a)] < lo || y[static_cast<std::size_t>(a)] > hi) return false;
    }
    return true;
}

// Pointwise ops on grid values; remapped ops interpolate trilinearly inside the cell-center hull.
GridField transform_grid(const GridField& in, const std::vector<std::string>& ops, double lam, const ProblemParams& p,
                         TransformCounts& counts) {
    const GridSpec& spec = in.spec;
    const auto e = derive_exponents(p);
    const auto& d = spec.dims;
    GridField cur = in;
    Side side = Side::Anisotropic;
    for (const auto& op : ops) {
        if (side == Side::Terminal) throw Error(ErrorCode::InvalidArgument, side_error(side));
        const AnalyticField interp = grid_field_adapter(cur, p);
        GridField next(spec);
        for (int i = 0; i < d[0]; ++i) {
            for (int j = 0; j < d[1]; ++j) {
                for (int k = 0; k < d[2]; ++k) {
                    const auto x = spec.point(i, j, k);
                    const double xn = x[2];
                    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    double v = 0.0;
                    bool filled = true;
                    if (op == "kelvin" || op == "inversion") {
                        if (side != Side::Anisotropic) throw Error(ErrorCode::InvalidArgument, side_error(side));
                        const double l2 = op == "kelvin" ? lam * lam : 1.0;
                        const std::array<double, 3> y{l2 * x[0] / r2, l2 * x[1] / r2, l2 * x[2] / r2};
                        if (in_hull(spec, y)) {
                            v = std::pow(l2 / r2, 0.5 * e.decay_d) * interp(y);
                        } else {
                            filled = false;
                        }
                    } else if (op == "hardy") {
                        if (side != Side::Anisotropic) throw Error(ErrorCode::InvalidArgument, "hardy needs an anisotropic-side field");
                        if (xn > 0.0) v = std::pow(xn, p.alpha) * cur.at(i, j, k); else filled = false;
                    } else if (op == "hyperbolic") {
                        const double power = side == Side::Hardy ? 0.5 * (p.n - 2.0) : 0.5 * e.decay_d;
                        if (xn > 0.0) v = std::pow(xn, power) * cur.at(i, j, k); else filled = false;
                    } else if (op == "ball") {
                        if (r2 >= 1.0) {
                            filled = false;
                        } else {
                            try {
                                const Point y = ball_chart(x);
                                if (in_hull(spec, y)) {
                                    const double lift = side == Side::Hardy ? 1.0 : std::pow(y[2], p.alpha);
                                    v = interp(y) * lift * ball_conformal_factor(x);
                                } else {
                                    filled = false;
                                }
                            } catch (const Error& err) {
                                if (err.code() != ErrorCode::SingularPoint) throw;
                                ++counts.singular;
                            }
                        }
                    } else {
                        throw Error(ErrorCode::InvalidArgument, "unknown op '" + op + "'");
                    }
                    if (!filled) ++counts.zero_filled;
                    next.at(i, j, k) = v;
                }
            }
        }
        cur = std::move(next);
        if (op == "hardy") side = Side::Hardy;
        if (op == "hyperbolic" || op == "ball") side = Side::Terminal;
    }
    return cur;
}

int cmd_transform(const Common& c, const std::vector<std::string>& ops, double lam, const std::string& in_path,
                  const std::string& field_name, const std::string& out_path, std::ostream& out) {
    if (ops.empty()) throw Error(ErrorCode::InvalidArgument, "at least one --op is required");
    if (in_path.empty() == field_name.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give exactly one of --in and --field");
    }
    if (!(lam > 0.0)) throw Error(ErrorCode::NonpositiveDilation, "--lam must be positive");
    TransformCounts counts;
    FieldFile result;
    if (!in_path.empty()) {
        const FieldFile input = read_field_file(in_path);
        result.params = input.params;
        result.field = transform_grid(input.field, ops, lam, input.params, counts);
    } else {
        result.params = params_from(c);
        result.field = transform_analytic(field_name, ops, lam, result.params, GridSpec::cube(c.grid, c.half_width), counts);
    }
    write_field_file(out_path, result);

    nlohmann::ordered_json j;
    j["ops"] = ops;
    j["source"] = in_path.empty() ? field_name : in_path;
    j["out"] = out_path;
    j["cells"] = result.field.values.size();
    j["zero_filled"] = counts.zero_filled;
    j["singular"] = counts.singular;
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!c.report.empty()) write_text(c.report, text);
    return 0;
}

int cmd_convergence(const Common& c, const std::string& grids_text, const std::string& quantity,
                    const std::string& norm_name, std::optional<double> min_order, std::ostream& out) {
    std::vector<int> grids;
    for (double g : parse_number_list(grids_text)) {
        const int gi = static_cast<int>(std::lround(g));
        if (gi != g || gi < 2 || gi % 2 != 0) throw Error(ErrorCode::InvalidArgument, "grid sizes must be even integers");
        grids.push_back(gi);
    }
    const ProblemParams p = params_from(c);
    if (p.n != 3) throw Error(ErrorCode::Unsupported, "gridded studies run in N = 3");
    const Norm norm = parse_norm(norm_name);
    const std::vector<StudyRow> rows = convergence_study(quantity, grids, c.half_width, p, norm);

    std::ostringstream csv;
    csv << "grid,h,residual,order\n";
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv << rows[i].grid << ',' << fmt17(rows[i].h) << ',' << fmt17(rows[i].residual) << ',';
        if (i > 0) {
            csv << fmt17(rows[i].order);
            if (min_order && !(rows[i].order >= *min_order)) ok = false;
        }
        csv << '\n';
    }
    out << csv.str();
    if (!c.report.empty()) write_text(c.report, csv.str());
    return ok ? 0 : 1;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NoConvergence:
        case ErrorCode::NotConverged:
            return 1;
        default:
            return 2;
    }
}

double snap_s(int n, double s) noexcept {
    const double target = 1.0 + 2.0 / n;
    return std::abs(s - target) <= 1e-6 ? target : s;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error(ErrorCode::InvalidArgument, "empty entry in list '" + text + "'");
        const std::string t = item.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || !std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "not a number: '" + t + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"delab: numerical checks for the weighted critical elliptic equation"};
    app.require_subcommand(1);

    Common verify_c, best_c, transform_c, conv_c;
    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
    add_common(verify, verify_c, false, nullptr, nullptr);
    verify->add_option("--suite", suite, "exponents|transforms|pohozaev|kazdan-warner|probes|all")
        ->capture_default_str();

    std::string alphas = "1", ss = "1.6666667";
    int max_iters = MinimizerConfig{}.max_iters;
    auto* best = app.add_subcommand("best-constant", "Estimate the Rayleigh minimum on a grid; CSV rows");
    add_common(best, best_c, true, &alphas, &ss);
    best->add_option("--max-iters", max_iters, "Descent iteration cap")->capture_default_str();

    std::vector<std::string> ops;
    double lam = 1.0;
    std::string in_path, field_name, out_path;
    auto* transform = app.add_subcommand("transform", "Apply transforms to a field file or a closed-form field");
    add_common(transform, transform_c, false, nullptr, nullptr);
    transform->add_option("--op", ops, "kelvin|inversion|hardy|hyperbolic|ball (repeatable, applied in order)")
        ->required();
    transform->add_option("--lam", lam, "Kelvin dilation")->capture_default_str();
    transform->add_option("--in", in_path, "Input AWF1 or .csv field file");
    transform->add_option("--field", field_name, "Closed-form source: explicit-U|power|const");
    transform->add_option("--out", out_path, "Output AWF1 or .csv path")->required();

    std::string grids = "16,32,64", quantity = "explicit-residual", norm_name = "l1";
    std::optional<double> min_order;
    auto* conv = app.add_subcommand("convergence", "Residual norms and empirical orders over grid sizes; CSV rows");
    add_common(conv, conv_c, false, nullptr, nullptr);
    conv->add_option("--grids", grids, "Comma-separated cells per axis")->capture_default_str();
    conv->add_option("--quantity", quantity, "apply-L-power|explicit-residual|pohozaev-residual")
        ->capture_default_str();
    conv->add_option("--norm", norm_name, "l1|l2|max")->capture_default_str();
    conv->add_option("--min-order", min_order, "Exit 1 when an empirical order falls below this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto threads_of = [&](const Common& c) {
        if (c.threads >= 0) set_thread_count(static_cast<unsigned>(c.threads));
    };
    try {
        if (*verify) {
            threads_of(verify_c);
            return cmd_verify(verify_c, suite, out);
        }
        if (*best) {
            threads_of(best_c);
            return cmd_best_constant(best_c, alphas, ss, max_iters, out);
        }
        if (*transform) {
            threads_of(transform_c);
            return cmd_transform(transform_c, ops, lam, in_path, field_name, out_path, out);
        }
        threads_of(conv_c);
        return cmd_convergence(conv_c, grids, quantity, norm_name, min_order, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace delab::cli
