#include "halfspace/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "halfspace/data.hpp"
#include "halfspace/expansions.hpp"
#include "halfspace/gegenbauer.hpp"
#include "halfspace/kernels.hpp"
#include "halfspace/sharpness.hpp"

namespace hs {

namespace {

constexpr double kPi = std::numbers::pi;
using Check = std::function<CheckReport()>;

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

CheckReport make(const std::string& name, double residual, double tol, std::map<std::string, double> params = {}) {
    CheckReport r;
    r.name = name;
    r.residual = residual;
    r.tolerance = tol;
    r.parameters = std::move(params);
    r.status = status_for(residual, tol);
    return r;
}

std::vector<double> t_grid(int count) {
    std::vector<double> t;
    for (int i = 0; i < count; ++i) t.push_back(-1.0 + 2.0 * i / (count - 1));
    return t;
}

// Coefficient of z^m in (1 - 2tz + z^2)^{-lambda}, expanded term by term.
double gegenbauer_explicit(double lambda, int m, double t) {
    if (m < 0) return 0.0;
    double s = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        const double lg = std::lgamma(lambda + m - k) - std::lgamma(lambda) - std::lgamma(k + 1.0) -
                          std::lgamma(m - 2.0 * k + 1.0);
        const double term = std::exp(lg) * std::pow(2.0 * t, m - 2 * k);
        s += (k % 2 == 0) ? term : -term;
    }
    return s;
}

double C(double lambda, int m, double t) { return m < 0 ? 0.0 : gegenbauer(lambda, m, t); }
double C1(double lambda, int m) { return m < 0 ? 0.0 : eval_at_one({lambda, m}); }

// ---------------------------------------------------------------------------

std::vector<Check> gegenbauer_suite() {
    std::vector<Check> out;
    const std::vector<double> lambdas{0.5, 1.0, 1.5, 2.5};
    for (double lambda : lambdas) {
        const std::string tag = "/lambda=" + num(lambda);
        out.push_back([=] {
            // Recurrence-based 200-term series against the closed form.
            double worst = 0.0;
            for (double t : t_grid(101))
                for (double z : {-0.6, -0.3, 0.3, 0.6}) {
                    const double a = generating_function_partial_sum(lambda, t, z, 200);
                    const double b = generating_function(lambda, t, z);
                    worst = std::max(worst, std::abs(a - b) / std::abs(b));
                }
            return make("gegenbauer/generating_function" + tag, worst, 1e-8, {{"lambda", lambda}, {"terms", 200}});
        });
        out.push_back([=] {
            double worst = 0.0;
            for (int m = 0; m <= 12; ++m)
                for (double t : t_grid(101))
                    worst = std::max(worst, std::abs(gegenbauer(lambda, m, t) - gegenbauer_explicit(lambda, m, t)) /
                                                C1(lambda, m));
            return make("gegenbauer/taylor_coefficients" + tag, worst, 1e-8, {{"lambda", lambda}, {"m_max", 12}});
        });
        out.push_back([=] {
            double parity = 0.0, major = 0.0, i33 = 0.0, i34 = 0.0, i4212 = 0.0, deriv = 0.0;
            for (int m = 0; m <= 12; ++m) {
                const double c1 = C1(lambda, m);
                for (double t : t_grid(101)) {
                    const double cm = C(lambda, m, t);
                    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
                    parity = std::max(parity, std::abs(C(lambda, m, -t) - sgn * cm) / c1);
                    major = std::max(major, (std::abs(cm) - c1) / c1);
                    const double s33 = m * c1 + 2 * lambda * (C1(lambda + 1, m - 1) + C1(lambda + 1, m - 2));
                    i33 = std::max(i33, std::abs(m * cm - 2 * lambda * (t * C(lambda + 1, m - 1, t) -
                                                                        C(lambda + 1, m - 2, t))) /
                                            s33);
                    const double s34 = (m + 2 * lambda) * c1 + 2 * lambda * (C1(lambda + 1, m) + C1(lambda + 1, m - 1));
                    i34 = std::max(i34, std::abs((m + 2 * lambda) * cm - 2 * lambda * (C(lambda + 1, m, t) -
                                                                                      t * C(lambda + 1, m - 1, t))) /
                                            s34);
                    if (m >= 1) {
                        const double s = m * c1 + (2 * lambda + m - 1) * C1(lambda, m - 1) +
                                         2 * lambda * C1(lambda + 1, m - 2);
                        const double rhs = (2 * lambda + m - 1) * t * C(lambda, m - 1, t) -
                                           2 * lambda * (1 - t * t) * C(lambda + 1, m - 2, t);
                        i4212 = std::max(i4212, std::abs(m * cm - rhs) / s);
                        const double h = 1e-5;
                        if (std::abs(t) <= 1 - h) {
                            const double fd = (C(lambda, m, t + h) - C(lambda, m, t - h)) / (2 * h);
                            deriv = std::max(deriv, std::abs(fd - derivative({lambda, m}, t)) /
                                                        (2 * lambda * C1(lambda + 1, m - 1)));
                        }
                    }
                }
            }
            auto r = make("gegenbauer/identities" + tag, std::max({parity, std::max(major, 0.0), i33, i34, i4212}),
                          1e-10,
                          {{"lambda", lambda}, {"parity", parity}, {"majorisation_excess", std::max(major, 0.0)},
                           {"lowering_identity", i33}, {"raising_identity", i34}, {"three_term_identity", i4212},
                           {"derivative_fd", deriv}});
            // Central difference of step 1e-5 against the derivative formula.
            if (deriv > 1e-6) r.status = CheckStatus::fail, r.note = "derivative formula disagrees with FD";
            return r;
        });
    }
    return out;
}

// ---------------------------------------------------------------------------

std::pair<HalfSpacePoint, BoundaryPoint> kernel_point(int n, double s, double Theta) {
    // |y'| = 1, |x| = s, sin(theta) cos(theta') = Theta.
    const double st = 0.5 * (1.0 + std::abs(Theta));
    const double theta = std::asin(st);
    const double ctp = Theta / st;
    const double stp = std::sqrt(std::max(0.0, 1.0 - ctp * ctp));
    std::vector<double> yp(static_cast<std::size_t>(n - 1), 0.0);
    yp[0] = ctp;
    if (n >= 3) yp[1] = stp;
    return {HalfSpacePoint::polar(n, s, theta), BoundaryPoint{yp}};
}

std::vector<Check> kernels_suite(std::uint64_t seed) {
    std::vector<Check> out;
    for (double lambda : {0.25, 0.5, 1.0, 1.5, 2.5}) {
        out.push_back([=] {
            double worst = 0.0;
            std::vector<double> thetas{-0.9, 0.0, 0.9};
            if (lambda < 0.5) thetas.push_back(0.99);
            for (int M = 1; M <= 3; ++M)
                for (double s : {0.1, 0.9, 1.0, 1.1, 3.0})
                    for (double Th : thetas) {
                        const auto [x, yp] = kernel_point(3, s, Th);
                        const KernelParams p{lambda, M, KernelKind::first};
                        worst = std::max(worst, std::abs(kernel_KM_direct(p, x, yp) - kernel_KM_integral(p, x, yp)));
                    }
            return make("kernels/dual_definition/lambda=" + num(lambda), worst, 1e-8, {{"lambda", lambda}});
        });
    }
    out.push_back([] {
        double worst = 0.0;
        for (int M = 1; M <= 3; ++M)
            for (double s : {0.1, 0.9, 1.0, 1.1, 3.0})
                for (double Th : {-0.9, 0.0, 0.9}) {
                    const auto [x, yp] = kernel_point(3, s, Th);
                    const double a = kernel_KM_integral_lambda_one(M, x, yp);
                    const double b = kernel_KM_integral({1.0, M, KernelKind::first}, x, yp);
                    worst = std::max(worst, std::abs(a - b));
                }
        return make("kernels/lambda_one_closed_form", worst, 1e-12);
    });
    out.push_back([] {
        double worst = 0.0;
        for (double lambda : {0.5, 1.5, 2.5})
            for (int M = 1; M <= 4; ++M)
                for (double s : {0.05, 0.2, 0.45})
                    for (double Th : {-0.9, 0.0, 0.5, 0.9}) {
                        const auto [x, yp] = kernel_point(3, s, Th);
                        const KernelParams p{lambda, M, KernelKind::first};
                        const double a = kernel_KM_series(p, x, yp), b = kernel_KM_direct(p, x, yp);
                        worst = std::max(worst, std::abs(a - b) / (kernel_K(lambda, x, yp) * std::pow(s, M)));
                    }
        return make("kernels/tail_series", worst, 1e-9);
    });
    out.push_back([seed] {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4000; ++i) {
            const double lambda = 0.25 + 2.5 * U(rng);
            const int M = 1 + static_cast<int>(4 * U(rng));
            const double s = 3.0 * U(rng), Th = -1.0 + 2.0 * U(rng);
            const auto [x, yp] = kernel_point(3, s, Th);
            if (x.xn() <= 1e-3) continue;
            const KernelParams p{lambda, M, KernelKind::first};
            const double v = kernel_eval(p, x, yp);
            worst = std::max(worst, std::abs(v) / kernel_bound_first(p, x, yp) - 1.0);
        }
        auto r = make("kernels/majorant", std::max(worst, 0.0), 0.0, {{"max_ratio_minus_one", worst}});
        return r;
    });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Check> harmonicity_suite(std::uint64_t seed) {
    std::vector<Check> out;
    for (int n = 2; n <= 4; ++n)
        for (Family fam : {Family::dirichlet, Family::neumann})
            out.push_back([=] {
                const auto pts = sample_interior_points(n, 10, 1.5, 0.3, 1.5, seed + n);
                CheckReport worst;
                bool have = false;
                for (int m = 0; m <= 6; ++m) {
                    HarmonicityCase c;
                    c.term = {fam, m, n};
                    c.n = n;
                    CheckReport r = check_harmonicity(c, pts, 1e-3, 1e-6);
                    r.parameters["worst_m"] = m;
                    const bool worse = !have || (r.status != CheckStatus::pass && worst.pass()) ||
                                       (r.status == worst.status && r.residual > worst.residual);
                    if (worse) worst = r, have = true;
                }
                worst.name += "/n=" + std::to_string(n);
                worst.parameters["m_max"] = 6;
                return worst;
            });
    QuadratureSpec sp;
    sp.abs_tol = 1e-9;
    sp.rel_tol = 1e-9;
    out.push_back([=] {
        HarmonicityCase c;
        c.target = HarmonicTarget::D;
        c.f = bump({0.0, 0.0}, 1.0);
        c.spec = sp;
        return check_harmonicity(c, sample_interior_points(3, 10, 2.0, 0.5, 2.0, seed + 11), 1e-2, 1e-5);
    });
    for (int M = 0; M <= 2; ++M) {
        out.push_back([=] {
            HarmonicityCase c;
            c.target = HarmonicTarget::u;
            c.f = poly_growth(2, M - 0.5);
            c.M = M;
            c.spec = sp;
            auto r = check_harmonicity(c, sample_interior_points(3, 10, 2.0, 0.5, 2.0, seed + 20 + M), 1e-2, 1e-4);
            r.name += "/M=" + std::to_string(M);
            r.parameters["growth"] = M - 0.5;
            return r;
        });
        out.push_back([=] {
            HarmonicityCase c;
            c.target = HarmonicTarget::v;
            c.f = poly_growth(2, M - 2.0);
            c.M = M;
            c.spec = sp;
            auto r = check_harmonicity(c, sample_interior_points(3, 10, 2.0, 0.5, 2.0, seed + 30 + M), 1e-2, 1e-4);
            r.name += "/M=" + std::to_string(M);
            r.parameters["growth"] = M - 2.0;
            return r;
        });
    }
    out.push_back([=] {
        const auto pts = sample_interior_points(3, 10, 1.5, 0.5, 1.5, seed + 40);
        return check_fd_refinement("harmonicity/control_order/r4", [](const std::vector<double>& x) {
            double r2 = 0.0;
            for (double a : x) r2 += a * a;
            return r2 * r2;
        }, pts, 1e-2);
    });
    out.push_back([=] {
        const auto pts = sample_interior_points(3, 10, 1.5, 0.5, 1.5, seed + 41);
        return check_fd_refinement("harmonicity/control_order/sin_xn2", [](const std::vector<double>& x) {
            return std::sin(x[0]) * x[2] * x[2] + std::exp(x[1]);
        }, pts, 1e-2);
    });
    return out;
}

std::vector<Check> boundary_suite() {
    std::vector<Check> out;
    QuadratureSpec sp;
    sp.abs_tol = 1e-9;
    sp.rel_tol = 1e-9;
    out.push_back([=] {
        auto r = check_boundary(BoundaryProblem::dirichlet, bump({0.0, 0.0}, 4.0), {0.0, 0.0},
                                {0.1, 0.01, 0.001}, sp, 1e-3);
        r.name += "/bump_center";
        r.parameters["radius"] = 4.0;
        return r;
    });
    out.push_back([=] {
        auto r = check_boundary(BoundaryProblem::dirichlet, bump({0.0, 0.0}, 1.0), {3.0, 0.0},
                                {0.1, 0.01, 0.001}, sp, 1e-3);
        r.name += "/outside_support";
        r.parameters["radius"] = 1.0;
        return r;
    });
    out.push_back([=] {
        auto r = check_boundary(BoundaryProblem::neumann, bump({0.0, 0.0}, 8.0), {0.0, 0.0},
                                {0.1, 0.04, 0.01}, sp, 5e-3);
        r.name += "/bump_center";
        r.parameters["radius"] = 8.0;
        return r;
    });
    return out;
}

std::vector<Check> prop31_suite(std::uint64_t seed) {
    std::vector<Check> out;
    for (int id = 1; id <= 8; ++id)
        for (double lambda : {0.5, 1.5})
            for (int M = 0; M <= 3; ++M)
                out.push_back([=] {
                    auto r = check_prop31_random(id, lambda, M, 3, 50, seed + 97 * id + 13 * M, 1e-4, 1e-6);
                    r.name += "/lambda=" + num(lambda) + "/M=" + std::to_string(M);
                    return r;
                });
    out.push_back([] {
        // theta' = 0 and pi: the right side vanishes.
        double worst = 0.0;
        for (double sgn : {1.0, -1.0}) {
            const std::vector<double> x{1.0, 0.0, 0.8}, yp{sgn * 1.7, 0.0};
            const Prop31Values v = prop31_values(8, 1.5, 2, x, yp, 1e-4);
            worst = std::max({worst, std::abs(v.fd), std::abs(v.closed_form)});
        }
        return make("prop31/8/theta_prime_endpoints", worst, 1e-6);
    });
    return out;
}

std::vector<Check> prop32_suite() {
    std::vector<Check> out;
    QuadratureSpec sp;
    sp.abs_tol = 1e-11;
    sp.rel_tol = 1e-11;
    const BoundaryData f = bump({2.2, 1.0}, 0.9);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 2.0, 0.8, {0.6, 0.8});
    const std::vector<double> y = x.y();
    for (int M = 1; M <= 2; ++M) {
        const std::vector<std::pair<int, Prop32Anchor>> anchors{
            {1, {0.2, 0}}, {2, {1.0, 0}}, {3, {y[0] - 1.0, 0}}, {4, {0.5 * x.y_norm(), 0}}, {5, {2.0 * x.xn(), 0}}};
        for (const auto& [rep, a] : anchors)
            out.push_back([=] {
                auto r = check_prop32(rep, f, M, x, a, sp, 1e-5);
                r.name += "/M=" + std::to_string(M);
                return r;
            });
        out.push_back([=] {
            auto r = check_prop32(1, f, M, x, {x.theta, 0}, sp, 1e-12);
            r.name += "/M=" + std::to_string(M) + "/empty_path";
            return r;
        });
        out.push_back([=] {
            auto r = check_prop32(5, f, M, x, {x.xn(), 0}, sp, 1e-12);
            r.name += "/M=" + std::to_string(M) + "/empty_path";
            return r;
        });
    }
    return out;
}

std::vector<double> scaled_radii(double scale) { return {8 * scale, 16 * scale, 32 * scale, 64 * scale}; }

std::vector<Check> growth_suite() {
    std::vector<Check> out;
    QuadratureSpec sp;
    sp.abs_tol = 1e-12;
    sp.rel_tol = 1e-9;
    const auto th = default_theta_grid();
    out.push_back([=] {
        GrowthCase c;
        c.target = GrowthTarget::F;
        c.f = annulus_bump(2, 2.0, 3.0);
        c.M = 1;
        c.lambda = 0.5;
        c.spec = sp;
        return growth_sweep(c, scaled_radii(c.f.support_radius()), th);
    });
    out.push_back([=] {
        GrowthCase c;
        c.target = GrowthTarget::F_second;
        c.f = bump({2.2, 1.0}, 0.9);
        c.M = 2;
        c.lambda = 1.0;
        c.spec = sp;
        return growth_sweep(c, scaled_radii(c.f.support_radius()), th);
    });
    // Global data: the scale is the outer cutoff radius 2.
    out.push_back([=] {
        GrowthCase c;
        c.target = GrowthTarget::u;
        c.f = poly_growth(2, 1.5);
        c.M = 2;
        c.spec = sp;
        auto r = growth_sweep(c, scaled_radii(2.0), th);
        r.parameters["growth"] = 1.5;
        return r;
    });
    out.push_back([=] {
        GrowthCase c;
        c.target = GrowthTarget::v;
        c.f = poly_growth(2, -0.5);
        c.M = 2;
        c.spec = sp;
        auto r = growth_sweep(c, scaled_radii(2.0), th);
        r.parameters["growth"] = -0.5;
        return r;
    });
    out.push_back([=] {
        GrowthCase c;
        c.target = GrowthTarget::F;
        c.f = zero_data(2);
        c.M = 1;
        c.lambda = 0.5;
        c.spec = sp;
        auto r = growth_sweep(c, scaled_radii(1.0), th);
        r.name += "/zero_data";
        return r;
    });
    return out;
}

// ---------------------------------------------------------------------------

CheckReport from_sign(const SignReport& s, const std::string& name) {
    CheckReport r;
    r.name = name;
    r.parameters = s.params;
    r.parameters["samples"] = static_cast<double>(s.samples);
    r.parameters["min"] = s.min_value;
    r.parameters["max"] = s.max_value;
    // Residual is the negated minimum; pass needs a strictly positive minimum.
    r.residual = -s.min_value;
    r.tolerance = 0.0;
    r.status = s.pass ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckReport from_bound(const LowerBoundReport& b, const std::string& name) {
    CheckReport r;
    r.name = name;
    r.parameters = b.params;
    r.parameters["measured_constant"] = b.measured_constant;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : b.rows) {
        r.parameters["F@" + std::to_string(row.j)] = row.F;
        r.parameters["bound@" + std::to_string(row.j)] = row.bound;
        worst = std::max(worst, row.bound / row.F);
    }
    // Largest bound / value ratio; the bound holds when it is at most 1.
    r.residual = worst;
    r.tolerance = 1.0;
    r.status = b.pass && worst <= 1.0 ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

std::vector<Check> sharpness_suite(std::uint64_t seed) {
    std::vector<Check> out;
    out.push_back([] {
        double worst = 0.0;
        std::map<std::string, double> p;
        for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
            worst = std::max(worst, std::abs(compute_constants(lambda, 1).beta1 - 1.0));
            for (int M = 1; M <= 4; ++M) {
                const SharpnessConstants c = compute_constants(lambda, M);
                // gamma = (sum_{m<M} 2^m binom(2 lambda + m - 1, m))^{-1/lambda}.
                double s = 0.0;
                for (int m = 0; m < M; ++m) s += std::ldexp(1.0, m) * binom_real(2 * lambda + m - 1, m);
                worst = std::max(worst, std::abs(c.gamma_lm - std::pow(s, -1.0 / lambda)) / c.gamma_lm);
                const double A2 = c.r0 * c.r0;
                worst = std::max(worst, std::abs(A2 * A2 + (1 - c.gamma_lm) * A2 - 2.0));
                const double lower = std::pow((c.A + 1) / (c.A - 1), 2 * lambda);
                if (c.A_lambda < lower) worst = std::max(worst, (lower - c.A_lambda) / lower);
                if (!(c.A > 1.0 && c.A < c.A_max + 1e-15)) worst = std::max(worst, 1.0);
            }
        }
        return make("sharpness/constants", worst, 1e-12, p);
    });
    for (double lambda : {0.5, 1.0, 1.5, 2.5})
        for (int M = 1; M <= 4; ++M) {
            const std::string tag = "/lambda=" + num(lambda) + "/M=" + std::to_string(M);
            out.push_back([=] {
                auto r = from_sign(sign_check_phi(lambda, M, 10000, seed), "sharpness/sign_phi_omega1" + tag);
                r.parameters["d4"] = r.parameters["min"];
                return r;
            });
            out.push_back([=] {
                const SignReport s = sign_check_phi_control(lambda, M, 10000, seed);
                CheckReport r = from_sign(s, "sharpness/control_outside_omega1" + tag);
                // The control must see negative values.
                r.residual = s.min_value;
                r.status = s.min_value < 0.0 ? CheckStatus::pass : CheckStatus::fail;
                r.note = "passes when the sign fails outside the region";
                return r;
            });
        }
    // Neumann and Dirichlet exponents in n = 3 and n = 4.
    for (const auto& [n, lambda] : std::vector<std::pair<int, double>>{{3, 0.5}, {3, 1.5}, {4, 1.0}, {4, 2.0}})
        for (int M : {1, 2})
            out.push_back([=] {
                const SharpnessConstants c = compute_constants(lambda, M);
                const double th = std::max(c.theta0, 1.45);
                auto r = from_sign(sign_check_KM_omega3(lambda, M, HalfSpacePoint::polar(n, 10.0, th), 10000, seed + 7),
                                   "sharpness/sign_KM_omega3/n=" + std::to_string(n) + "/lambda=" + num(lambda) +
                                       "/M=" + std::to_string(M));
                r.parameters["d8"] = r.parameters["min"];
                r.parameters["corner_ratio"] = omega3_corner_ratio(lambda, M);
                return r;
            });
    out.push_back([] {
        double worst = 0.0;
        for (double lambda : {1.0, 1.5, 2.0, 2.5})
            for (int M = 1; M <= 4; ++M) {
                const double a = omega3_corner_ratio(lambda, M), b = omega3_corner_closed_form(lambda, M);
                worst = std::max(worst, std::abs(a - b) / std::abs(b));
            }
        return make("sharpness/omega3_corner_ratio", worst, 1e-8);
    });
    QuadratureSpec sp;
    sp.abs_tol = 1e-10;
    sp.rel_tol = 1e-8;
    out.push_back([=] {
        return from_bound(half_ball_lower_bound(3, 0.5, 1, 0.5, {4.0, 16.0}, {1.0, 1.0}, sp, 2000, seed + 3),
                          "sharpness/lower_bound_half_balls");
    });
    out.push_back([=] {
        const double th = 1.5;
        const std::vector<double> a{4.0, 16.0}, b{4.0 / std::tan(th), 16.0 / std::tan(th)};
        return from_bound(super_ball_lower_bound(3, 0.5, 1, a, b, {1.0, 1.0}, sp, 2000, seed + 5),
                          "sharpness/lower_bound_super_balls");
    });
    out.push_back([=] {
        const SharpnessConstants c = compute_constants(1.5, 1);
        const double th = 1.5;
        const std::vector<double> a{4.0, 16.0}, b{4.0 / std::tan(th), 16.0 / std::tan(th)};
        const BoundaryData f = data_balls_super_extension(2, a, b, {1.0, 1.0}, c);
        double lowest = std::numeric_limits<double>::infinity();
        std::map<std::string, double> p{{"lambda", 1.5}, {"M", 1}, {"A_lambda", c.A_lambda}};
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double v = balanced_sign_integral(f, c, HalfSpacePoint::from_cartesian({a[j], 0.0, b[j]}), sp);
            p["integral@" + std::to_string(j + 1)] = v;
            lowest = std::min(lowest, v);
        }
        // Residual is the negated smallest integral; the check needs it non-negative.
        return make("sharpness/balanced_sign_mirrored_balls", -lowest, 0.0, p);
    });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Check> expansion_suite() {
    std::vector<Check> out;
    QuadratureSpec sp;
    sp.abs_tol = 1e-12;
    sp.rel_tol = 1e-11;
    const BoundaryData ex = exp_decay(2);
    out.push_back([=] {
        const HalfSpacePoint xh = HalfSpacePoint::polar(3, 1.0, 0.7);
        const double q = coefficient_Y1(0, ex, xh, sp);
        return make("expansion/exp_Y0_neumann_n3", std::abs(q - 1.0), 1e-5, {{"quadrature", q}, {"closed_form", 1.0}});
    });
    out.push_back([=] {
        double worst = 0.0;
        for (int m : {2, 4, 6})
            for (double th : {0.0, 0.7, 1.3}) {
                const HalfSpacePoint xh = HalfSpacePoint::polar(3, 1.0, th);
                const double q = coefficient_Y1(m, ex, xh, sp);
                const double c = exp_example_Y1(3, m, th).value();
                worst = std::max(worst, std::abs(q - c) / std::max(1.0, std::abs(c)));
            }
        return make("expansion/exp_even_coefficients", worst, 1e-5);
    });
    out.push_back([=] {
        double worst = 0.0;
        for (int m : {1, 3, 5})
            for (double th : {0.0, 0.7, 1.3})
                worst = std::max(worst, std::abs(coefficient_Y1(m, ex, HalfSpacePoint::polar(3, 1.0, th), sp)));
        return make("expansion/exp_odd_coefficients", worst, 1e-8);
    });
    out.push_back([=] {
        const BoundaryData g = bump({1.2, -0.4}, 1.0);
        double worst = 0.0;
        for (int m = 0; m <= 3; ++m)
            for (double th : {0.3, 0.9}) {
                const HalfSpacePoint xh = HalfSpacePoint::polar(3, 1.0, th, {0.6, 0.8});
                const double a = addition_separation(3, m, th, {0.6, 0.8}, g, sp);
                const double b = coefficient_Y0(m, g, xh, sp);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        return make("expansion/addition_reassembly", worst, 1e-8);
    });
    out.push_back([] {
        double worst = 0.0;
        for (int n = 3; n <= 5; ++n)
            for (int m = 0; m <= 8; ++m)
                for (double th : {0.0, 0.4, 1.1, 1.5})
                    for (double t : t_grid(21)) {
                        double s = 0.0;
                        for (int l = 0; 2 * l <= m; ++l)
                            s += addition_gamma(n, m, l, th) * gegenbauer((n - 1) / 2.0, m - 2 * l, t);
                        const double d = gegenbauer(n / 2.0, m, std::sin(th) * t);
                        worst = std::max(worst, std::abs(s - d) / eval_at_one({n / 2.0, m}));
                    }
        return make("expansion/addition_identity", worst, 1e-10);
    });
    for (int M : {1, 2})
        out.push_back([=] {
            AsymptoticExpansion e(Family::neumann, ex, 3, sp);
            std::vector<double> scaled;
            double second_gap = 0.0;
            std::map<std::string, double> p{{"M", M}};
            for (double r : {20.0, 40.0, 80.0}) {
                const ExpansionValue v = e.evaluate(M, HalfSpacePoint::polar(3, r, 0.6));
                const double s = std::abs(v.remainder) * std::pow(r, M + 3 - 3);
                scaled.push_back(s);
                second_gap = std::max(second_gap, std::abs(v.remainder - v.remainder_second) /
                                                      std::max(std::abs(v.direct), 1e-300));
                p["scaled@" + num(r)] = s;
            }
            p["second_kind_gap"] = second_gap;
            bool dec = scaled[1] < scaled[0] && scaled[2] < scaled[1];
            auto r = make("expansion/neumann_remainder/M=" + std::to_string(M), scaled[2] / scaled[0], 1.0, p);
            if (!dec || second_gap > 1e-8) {
                r.status = CheckStatus::fail;
                r.note = !dec ? "remainder times r^{M+n-3} does not decrease" : "remainder routes disagree";
            }
            return r;
        });
    out.push_back([=] {
        AsymptoticExpansion e(Family::neumann, ex, 3, sp);
        const ExpansionValue v = e.evaluate(0, HalfSpacePoint::polar(3, 5.0, 0.4));
        return make("expansion/zero_terms_remainder", std::abs(v.remainder - v.direct), 0.0);
    });
    return out;
}

std::vector<Check> divergence_suite() {
    std::vector<Check> out;
    out.push_back([] {
        const auto terms = divergence_demo(3, 10.0, 0.0, 40);
        const int k = divergence_onset(terms);
        std::map<std::string, double> p{{"n", 3}, {"r", 10}, {"theta", 0}, {"onset", k}};
        int run = 0;
        bool finite = true;
        for (const auto& t : terms) finite = finite && std::isfinite(t.log_magnitude);
        if (k >= 0)
            for (std::size_t i = static_cast<std::size_t>(k) + 1; i < terms.size(); ++i) {
                if (terms[i].log_magnitude > terms[i - 1].log_magnitude) ++run;
                else break;
            }
        p["increasing_run"] = run;
        auto r = make("divergence/neumann_exp_n3", run >= 5 && finite ? 0.0 : 1.0, 0.0, p);
        if (!finite) r.note = "non-finite log magnitude";
        return r;
    });
    out.push_back([] {
        // Far beyond the double-precision range: log magnitudes stay finite.
        const auto terms = divergence_demo(3, 10.0, 0.0, 400);
        double last = terms.back().log_magnitude;
        return make("divergence/log_space_k400", std::isfinite(last) ? 0.0 : 1.0, 0.0, {{"log_magnitude", last}});
    });
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gegenbauer", "kernels", "harmonicity", "boundary", "prop31",
                                                "prop32",     "growth",  "sharpness",   "expansion", "divergence"};
    return names;
}

std::vector<std::function<CheckReport()>> build_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "gegenbauer") return gegenbauer_suite();
    if (name == "kernels") return kernels_suite(opt.seed);
    if (name == "harmonicity") return harmonicity_suite(opt.seed);
    if (name == "boundary") return boundary_suite();
    if (name == "prop31") return prop31_suite(opt.seed);
    if (name == "prop32") return prop32_suite();
    if (name == "growth") return growth_suite();
    if (name == "sharpness") return sharpness_suite(opt.seed);
    if (name == "expansion") return expansion_suite();
    if (name == "divergence") return divergence_suite();
    if (name == "all") {
        std::vector<std::function<CheckReport()>> all;
        for (const auto& s : suite_names()) {
            auto part = build_suite(s, opt);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt) {
    return run_checks(build_suite(name, opt), opt.jobs);
}

}  // namespace hs
