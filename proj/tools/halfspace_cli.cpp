// halfspace: evaluate kernels and solutions, tabulate expansions, run growth sweeps
// and verification suites.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfspace/data.hpp"
#include "halfspace/expansions.hpp"
#include "halfspace/kernels.hpp"
#include "halfspace/quadrature.hpp"
#include "halfspace/sharpness.hpp"
#include "halfspace/suites.hpp"
#include "halfspace/verification.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
        return buf;
    }
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<std::string>(c)) return csv_escape(std::get<std::string>(c));
    return "";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        return v;
    }
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

void write_table(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
        os << "\r\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << "\r\n";
        }
        return;
    }
    for (const auto& row : t.rows) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < row.size(); ++i) j[t.columns[i]] = json_cell(row[i]);
        os << j.dump() << "\n";
    }
}

// Output is buffered so that a failure never leaves a partial table behind.
void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << text;
}

// ---------------------------------------------------------------------------

struct DataOptions {
    std::string name = "bump";
    std::vector<double> center;
    double radius = 1.0;
    double amplitude = 1.0;
    double g = 0.0;
    int count = 3;
    std::vector<double> centers{4.0, 16.0};
    std::vector<double> amplitudes{1.0, 1.0};
    std::vector<double> a{4.0, 16.0};
    std::vector<double> b;
    double r_in = 2.0;
    double r_out = 3.0;
};

struct Common {
    int n = 3;
    double lambda = 1.0;
    int M = 0;
    std::vector<double> r{2.0};
    std::vector<double> theta{0.0};
    std::vector<double> y_hat;
    hs::QuadratureSpec spec;
    DataOptions data;
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* app, Common& c, bool with_data) {
    app->add_option("--n", c.n, "Dimension of the half space")->check(CLI::Range(2, 5));
    app->add_option("--lambda", c.lambda, "Kernel exponent lambda (> 0)");
    app->add_option("--M", c.M, "Number of subtracted terms")->check(CLI::NonNegativeNumber);
    app->add_option("--r", c.r, "Radii |x| (comma separated)")->delimiter(',');
    app->add_option("--theta", c.theta, "Polar angles in [0, pi/2) (comma separated)")->delimiter(',');
    app->add_option("--y-hat", c.y_hat, "Unit direction of the boundary projection")->delimiter(',');
    app->add_option("--abs-tol", c.spec.abs_tol, "Quadrature absolute tolerance");
    app->add_option("--rel-tol", c.spec.rel_tol, "Quadrature relative tolerance");
    app->add_option("--max-level", c.spec.max_level, "Quadrature refinement levels")->check(CLI::Range(0, 8));
    app->add_option("--truncation-radius", c.spec.truncation_radius, "Outer radius for global data (0: automatic)");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("-o,--output", c.output, "Output file (default stdout)");
    if (!with_data) return;
    auto& d = c.data;
    app->add_option("--data", d.name, "Built-in boundary data")
        ->check(CLI::IsMember({"bump", "annulus_bump", "bump_train", "exp_decay", "poly_growth", "zero",
                               "sharpness_half_balls", "sharpness_super_balls"}));
    app->add_option("--center", d.center, "bump: centre (n - 1 coordinates)")->delimiter(',');
    app->add_option("--radius", d.radius, "bump: radius");
    app->add_option("--amplitude", d.amplitude, "bump, annulus_bump: amplitude");
    app->add_option("--g", d.g, "poly_growth, bump_train: growth exponent");
    app->add_option("--count", d.count, "bump_train: number of bumps");
    app->add_option("--r-in", d.r_in, "annulus_bump: inner radius");
    app->add_option("--r-out", d.r_out, "annulus_bump: outer radius");
    app->add_option("--centers", d.centers, "sharpness_half_balls: ball centres c_i")->delimiter(',');
    app->add_option("--amplitudes", d.amplitudes, "sharpness data: amplitudes f_i")->delimiter(',');
    app->add_option("--a", d.a, "sharpness_super_balls: ball centres a_i")->delimiter(',');
    app->add_option("--b", d.b, "sharpness_super_balls: ball radii b_i (default a_i / 4)")->delimiter(',');
}

void validate(const Common& c) {
    if (!(c.lambda > 0.0)) throw UsageError("--lambda must be > 0");
    for (double r : c.r)
        if (!(r > 0.0)) throw UsageError("--r values must be > 0");
    for (double t : c.theta)
        if (!(t >= 0.0 && t < std::numbers::pi / 2)) throw UsageError("--theta values must lie in [0, pi/2)");
    if (!c.y_hat.empty() && static_cast<int>(c.y_hat.size()) != c.n - 1)
        throw UsageError("--y-hat needs n - 1 components");
    if (!(c.spec.abs_tol > 0.0) || !(c.spec.rel_tol > 0.0)) throw UsageError("tolerances must be > 0");
}

hs::BoundaryData make_data(const Common& c) {
    const auto& d = c.data;
    const int dim = c.n - 1;
    if (d.name == "bump") {
        std::vector<double> center = d.center.empty() ? std::vector<double>(dim, 0.0) : d.center;
        if (static_cast<int>(center.size()) != dim) throw UsageError("--center needs n - 1 coordinates");
        if (!(d.radius > 0.0)) throw UsageError("--radius must be > 0");
        return hs::bump(center, d.radius, d.amplitude);
    }
    if (d.name == "annulus_bump") {
        if (!(0.0 <= d.r_in && d.r_in < d.r_out)) throw UsageError("need 0 <= --r-in < --r-out");
        return hs::annulus_bump(dim, d.r_in, d.r_out, d.amplitude);
    }
    if (d.name == "bump_train") {
        if (d.count < 1) throw UsageError("--count must be >= 1");
        return hs::bump_train(dim, d.count, d.g);
    }
    if (d.name == "exp_decay") return hs::exp_decay(dim);
    if (d.name == "poly_growth") return hs::poly_growth(dim, d.g);
    if (d.name == "zero") return hs::zero_data(dim);
    if (c.M < 1) throw UsageError("sharpness data needs --M >= 1");
    if (d.name == "sharpness_half_balls") {
        if (d.centers.size() != d.amplitudes.size()) throw UsageError("--centers and --amplitudes differ in length");
        return hs::data_half_balls(dim, d.amplitudes, d.centers, c.lambda, c.M);
    }
    std::vector<double> b = d.b;
    if (b.empty())
        for (double a : d.a) b.push_back(a / 4.0);
    if (b.size() != d.a.size() || d.amplitudes.size() != d.a.size())
        throw UsageError("--a, --b and --amplitudes differ in length");
    return hs::data_balls_super_extension(dim, d.a, b, d.amplitudes, hs::compute_constants(c.lambda, c.M));
}

std::vector<hs::HalfSpacePoint> grid(const Common& c) {
    std::vector<hs::HalfSpacePoint> pts;
    for (double r : c.r)
        for (double t : c.theta) pts.push_back(hs::HalfSpacePoint::polar(c.n, r, t, c.y_hat));
    return pts;
}

// ---------------------------------------------------------------------------

struct EvalOptions {
    std::string kernel;
    std::string solution;
    std::vector<double> yp;
};

Table cmd_eval(const Common& c, const EvalOptions& e) {
    validate(c);
    if (e.kernel.empty() == e.solution.empty()) throw UsageError("give exactly one of --kernel or --solution");
    Table t;
    if (!e.kernel.empty()) {
        if (static_cast<int>(e.yp.size()) != c.n - 1) throw UsageError("--yp needs n - 1 coordinates");
        const hs::BoundaryPoint yp{e.yp};
        if (e.kernel != "K" && c.M >= 1 && yp.norm() == 0.0) throw UsageError("modified kernels need y' != 0");
        t.columns = {"r", "theta", "kernel", "lambda", "M", "value"};
        for (const auto& x : grid(c)) {
            const hs::KernelParams p{c.lambda, c.M,
                                     e.kernel == "KM_second" ? hs::KernelKind::second : hs::KernelKind::first};
            double v = 0.0;
            if (e.kernel == "K") v = hs::kernel_K(c.lambda, x, yp);
            else if (e.kernel == "KM_integral") v = hs::kernel_KM_integral(p, x, yp);
            else v = hs::kernel_eval(p, x, yp);
            t.rows.push_back({x.r, x.theta, e.kernel, c.lambda, static_cast<long long>(c.M), v});
        }
        return t;
    }
    const hs::BoundaryData f = make_data(c);
    static const std::map<std::string, hs::Potential> kinds{
        {"F", hs::Potential::F},     {"F_second", hs::Potential::F_second}, {"D", hs::Potential::D},
        {"N", hs::Potential::N},     {"D_M", hs::Potential::D_M},           {"N_M", hs::Potential::N_M},
        {"u", hs::Potential::u},     {"v", hs::Potential::v}};
    hs::PotentialSpec p;
    p.kind = kinds.at(e.solution);
    p.n = c.n;
    p.M = c.M;
    p.lambda = c.lambda;
    // u and v with no subtracted terms are D and N.
    if (p.kind == hs::Potential::u && c.M == 0) p.kind = hs::Potential::D;
    if (p.kind == hs::Potential::v && c.M == 0) p.kind = hs::Potential::N;
    t.columns = {"r", "theta", "solution", "data", "M", "value", "error", "level", "nodes"};
    for (const auto& x : grid(c)) {
        const hs::QuadResult q = hs::evaluate(p, f, x, c.spec);
        t.rows.push_back({x.r, x.theta, e.solution, f.name, static_cast<long long>(c.M), q.value, q.error,
                          static_cast<long long>(q.level), static_cast<long long>(q.nodes)});
    }
    return t;
}

struct ExpandOptions {
    std::string family = "neumann";
    std::string table = "coefficients";
    int m_max = 4;
    int k_max = 30;
};

std::optional<double> closed_form(const std::string& data, hs::Family fam, int n, int m, double theta) {
    if (data != "exp_decay") return std::nullopt;
    if (fam == hs::Family::neumann) return hs::exp_example_Y1(n, m, theta).value();
    return hs::exp_example_Y0(n, m, theta).value();
}

Table cmd_expand(const Common& c, const ExpandOptions& e) {
    validate(c);
    Table t;
    if (e.table == "divergence") {
        if (e.k_max < 1) throw UsageError("--k-max must be >= 1");
        t.columns = {"k", "r", "theta", "log_magnitude", "magnitude"};
        for (double r : c.r)
            for (double th : c.theta)
                for (const auto& d : hs::divergence_demo(c.n, r, th, e.k_max))
                    t.rows.push_back({static_cast<long long>(d.k), r, th, d.log_magnitude, d.magnitude});
        return t;
    }
    const hs::Family fam = e.family == "dirichlet" ? hs::Family::dirichlet : hs::Family::neumann;
    if (fam == hs::Family::neumann && c.n < 3) throw UsageError("the Neumann expansion needs n >= 3");
    const hs::BoundaryData f = make_data(c);
    const hs::AsymptoticExpansion ex(fam, f, c.n, c.spec);
    std::vector<double> y_hat = c.y_hat.empty() ? hs::unit_vector(c.n - 1, 0) : c.y_hat;
    if (e.table == "coefficients") {
        t.columns = {"m", "theta", "quadrature", "closed_form"};
        for (int m = 0; m <= e.m_max; ++m)
            for (double th : c.theta) {
                const auto cf = closed_form(f.name, fam, c.n, m, th);
                t.rows.push_back({static_cast<long long>(m), th, ex.coefficient(m, th, y_hat),
                                  cf ? Cell{*cf} : Cell{}});
            }
        return t;
    }
    t.columns = {"M", "r", "theta", "partial_sum", "remainder", "remainder_second", "direct"};
    for (const auto& x : grid(c)) {
        const hs::ExpansionValue v = ex.evaluate(c.M, x);
        t.rows.push_back(
            {static_cast<long long>(c.M), x.r, x.theta, v.partial_sum, v.remainder, v.remainder_second, v.direct});
    }
    return t;
}

struct SweepOptions {
    std::string target = "F";
    std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
};

Table cmd_sweep(const Common& c, const SweepOptions& s) {
    validate(c);
    static const std::map<std::string, hs::GrowthTarget> targets{{"F", hs::GrowthTarget::F},
                                                                 {"u", hs::GrowthTarget::u},
                                                                 {"v", hs::GrowthTarget::v},
                                                                 {"F_second", hs::GrowthTarget::F_second}};
    hs::GrowthCase gc;
    gc.target = targets.at(s.target);
    gc.f = make_data(c);
    gc.n = c.n;
    gc.M = c.M;
    gc.lambda = c.lambda;
    gc.spec = c.spec;
    for (double r : s.radii)
        if (!(r > 0.0)) throw UsageError("--radii must be > 0");
    const bool default_theta = c.theta.size() == 1 && c.theta[0] == 0.0;
    const hs::GrowthSweep w =
        hs::growth_sweep_values(gc, s.radii, default_theta ? hs::default_theta_grid() : c.theta);
    Table t;
    t.columns = {"target", "radius", "mu", "scaled", "exponent"};
    for (std::size_t i = 0; i < w.radii.size(); ++i)
        t.rows.push_back({s.target, w.radii[i], w.mu[i], w.scaled[i], w.exponent});
    return t;
}

int cmd_verify(const std::string& suite, const hs::SuiteOptions& opt, const std::string& format,
               const std::string& output) {
    const auto names = hs::suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw UsageError("unknown suite '" + suite + "'");
    const auto reports = hs::run_suite(suite, opt);
    std::ostringstream os;
    if (format == "csv") {
        Table t;
        t.columns = {"name", "residual", "tolerance", "status", "refinement_order", "note"};
        for (const auto& r : reports)
            t.rows.push_back({r.name, r.residual, r.tolerance, std::string(hs::to_string(r.status)),
                              r.refinement_order ? Cell{*r.refinement_order} : Cell{}, r.note});
        write_table(os, t, "csv");
    } else {
        for (const auto& r : reports) os << hs::to_json_line(r) << "\n";
    }
    emit(os.str(), output);
    const hs::SuiteSummary s = hs::summarize(reports);
    std::fprintf(stderr, "%d passed, %d failed, %d inconclusive\n", s.passed, s.failed, s.inconclusive);
    if (s.failed > 0) return kExitFail;
    return s.inconclusive > 0 ? kExitInconclusive : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modified Poisson kernels and solutions in the half space"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with [eval], [expand], [sweep] or [verify] sections");

    Common common;
    EvalOptions eval_opt;
    ExpandOptions expand_opt;
    SweepOptions sweep_opt;
    std::string suite = "all";
    hs::SuiteOptions suite_opt;
    std::string verify_format = "json", verify_output;

    auto* eval = app.add_subcommand("eval", "Evaluate a kernel or a solution over an (r, theta) grid");
    add_common(eval, common, true);
    eval->add_option("--kernel", eval_opt.kernel, "Kernel: K, KM, KM_second, KM_integral")
        ->check(CLI::IsMember({"K", "KM", "KM_second", "KM_integral"}));
    eval->add_option("--solution", eval_opt.solution, "Integral: F, F_second, D, N, D_M, N_M, u, v")
        ->check(CLI::IsMember({"F", "F_second", "D", "N", "D_M", "N_M", "u", "v"}));
    eval->add_option("--yp", eval_opt.yp, "Boundary point y' for kernels")->delimiter(',');

    auto* expand = app.add_subcommand("expand", "Expansion coefficients, remainders or divergence terms");
    add_common(expand, common, true);
    expand->add_option("--family", expand_opt.family, "dirichlet or neumann")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    expand->add_option("--table", expand_opt.table, "coefficients, remainders or divergence")
        ->check(CLI::IsMember({"coefficients", "remainders", "divergence"}));
    expand->add_option("--m-max", expand_opt.m_max, "Largest coefficient index")->check(CLI::NonNegativeNumber);
    expand->add_option("--k-max", expand_opt.k_max, "Largest divergence order");

    auto* sweep = app.add_subcommand("sweep", "Weighted growth sweep over dyadic radii");
    add_common(sweep, common, true);
    sweep->add_option("--target", sweep_opt.target, "F, u, v or F_second")
        ->check(CLI::IsMember({"F", "u", "v", "F_second"}));
    sweep->add_option("--radii", sweep_opt.radii, "Radii (comma separated)")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::vector<std::string> suite_choices = hs::suite_names();
    suite_choices.push_back("all");
    verify->add_option("suite", suite, "Suite name")->check(CLI::IsMember(suite_choices));
    verify->add_option("--seed", suite_opt.seed, "Seed for sampling checks");
    auto* jobs = verify->add_option("--jobs", suite_opt.jobs, "Worker threads (default $HALFSPACE_JOBS or 1)")
                     ->check(CLI::PositiveNumber);
    verify->add_option("--format", verify_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("-o,--output", verify_output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed() && jobs->count() == 0)
            if (const char* env = std::getenv("HALFSPACE_JOBS")) {
                char* end = nullptr;
                const long v = std::strtol(env, &end, 10);
                if (end == env || *end != '\0' || v < 1) throw UsageError("HALFSPACE_JOBS must be a positive integer");
                suite_opt.jobs = static_cast<int>(v);
            }
        if (verify->parsed()) return cmd_verify(suite, suite_opt, verify_format, verify_output);
        Table t;
        if (eval->parsed()) t = cmd_eval(common, eval_opt);
        else if (expand->parsed()) t = cmd_expand(common, expand_opt);
        else t = cmd_sweep(common, sweep_opt);
        std::ostringstream os;
        write_table(os, t, common.format);
        emit(os.str(), common.output);
        return kExitPass;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
}
