#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfspace/data.hpp"
#include "halfspace/kernels.hpp"
#include "halfspace/quadrature.hpp"

using namespace hs;
constexpr double kPi = std::numbers::pi;

namespace {

QuadratureSpec tight() {
    QuadratureSpec s;
    s.abs_tol = 1e-11;
    s.rel_tol = 1e-11;
    return s;
}

// Midpoint rule on a uniform 1000 x 1000 grid over the square [-3, 3]^2.
double riemann_F(double lambda, int M, const BoundaryData& f, const HalfSpacePoint& x) {
    const int N = 1000;
    const double h = 6.0 / N;
    double s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double y[2] = {-3.0 + (i + 0.5) * h, -3.0 + (j + 0.5) * h};
            const double v = f.eval(y);
            if (v == 0.0) continue;
            s += v * kernel_eval({lambda, M, KernelKind::first}, x, BoundaryPoint{{y[0], y[1]}});
        }
    return s * h * h;
}

}  // namespace

TEST_CASE("quadrature: cutoff plateaus and midpoint") {
    CHECK(cutoff_w(std::vector<double>{0.5, 0.0}) == 0.0);
    CHECK(cutoff_w(std::vector<double>{0.0, 3.0}) == 1.0);
    CHECK(cutoff_w(std::vector<double>{1.5, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("quadrature: zero data") {
    const auto z = zero_data(2);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 2.0, 0.5);
    CHECK(integral_F({1.0, 1, KernelKind::first}, z, x, tight()) == 0.0);
    CHECK(integral_F_second({1.0, 1, KernelKind::second}, z, x, tight()) == 0.0);
}

TEST_CASE("quadrature: annulus bump against a brute-force Riemann sum") {
    const BoundaryData f = annulus_bump(2, 2.0, 3.0, 1.0, true);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.0, 0.0);
    const double q = integral_F({1.5, 0, KernelKind::first}, f, x, tight());
    CHECK(q == doctest::Approx(riemann_F(1.5, 0, f, x)).epsilon(1e-5));
    // Unit mass data.
    CHECK(integrate_data(f, [](const double*, double) { return 1.0; }, tight(), 0).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quadrature: Poisson kernel has unit mass") {
    BoundaryData one = poly_growth(2, 0.0);
    for (const auto& x : {HalfSpacePoint::polar(3, 1.0, 0.0), HalfSpacePoint::polar(3, 2.0, 0.9, {0.6, 0.8}),
                          HalfSpacePoint::polar(3, 0.3, 1.2)})
        CHECK(dirichlet_D(one, x, tight()) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("quadrature: symmetry, linearity and positivity") {
    const BoundaryData a = bump({1.0, 0.5}, 0.8), b = bump({-2.0, 1.0}, 0.6);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.5, 0.6, {0.6, 0.8});
    const QuadratureSpec s = tight();
    const double fa = dirichlet_D(a, x, s), fb = dirichlet_D(b, x, s);
    CHECK(fa > 0.0);
    CHECK(neumann_N(a, x, s) > 0.0);
    CHECK(dirichlet_D(combine(2.0, a, -3.0, b), x, s) == doctest::Approx(2 * fa - 3 * fb).epsilon(1e-10));
    // Odd data in y_1 on the axis.
    const BoundaryData odd = combine(1.0, bump({1.0, 0.0}, 0.5), -1.0, bump({-1.0, 0.0}, 0.5));
    CHECK(std::abs(dirichlet_D(odd, HalfSpacePoint::polar(3, 2.0, 0.0), s)) < 1e-12);
}

TEST_CASE("quadrature: M = 0 modified potentials reduce to plain ones") {
    const BoundaryData f = bump({2.0, 1.0}, 0.7);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.2, 0.4);
    CHECK(dirichlet_DM(0, f, x, tight()) == doctest::Approx(dirichlet_D(f, x, tight())).epsilon(1e-12));
    CHECK(neumann_NM(0, f, x, tight()) == doctest::Approx(neumann_N(f, x, tight())).epsilon(1e-12));
}

TEST_CASE("quadrature: D_M - D is the subtracted harmonic polynomial") {
    const BoundaryData f = bump({2.5, -0.5}, 0.9);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.1, 0.7, {0.6, 0.8});
    const QuadratureSpec s = tight();
    const int M = 3;
    const double alpha = alpha_n(3);
    CHECK(alpha == doctest::Approx(1.0 / (2 * kPi)));
    // c_m = int f |y'|^{-(m + 3)} C_m^{3/2}(Theta) dy' with C_0 = 1, C_1 = 3t, C_2 = 1.5 (5t^2 - 1).
    auto C = [](int m, double t) { return m == 0 ? 1.0 : (m == 1 ? 3.0 * t : 1.5 * (5.0 * t * t - 1.0)); };
    double poly = 0.0;
    for (int m = 0; m < M; ++m) {
        const auto g = [&](const double* y, double rho) {
            const double t = std::sin(x.theta) * (x.y_hat[0] * y[0] + x.y_hat[1] * y[1]) / rho;
            return std::pow(x.r, m) * std::pow(rho, -(m + 3.0)) * C(m, t);
        };
        poly += integrate_data(f, g, s, 0).value;
    }
    const double diff = dirichlet_DM(M, f, x, s) - dirichlet_D(f, x, s);
    CHECK(diff == doctest::Approx(-alpha * x.xn() * poly).epsilon(1e-8));
}

TEST_CASE("quadrature: cutoff splitting of u and v") {
    const QuadratureSpec s = tight();
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.3, 0.5);
    const BoundaryData inner = bump({0.2, 0.1}, 0.6);
    const BoundaryData outer = annulus_bump(2, 2.5, 3.5);
    CHECK(solution_u(inner, 2, x, s) == doctest::Approx(dirichlet_D(inner, x, s)).epsilon(1e-12));
    CHECK(solution_u(outer, 2, x, s) == doctest::Approx(dirichlet_DM(2, outer, x, s)).epsilon(1e-12));
    CHECK(solution_v(outer, 1, x, s) == doctest::Approx(neumann_NM(1, outer, x, s)).epsilon(1e-12));
}

TEST_CASE("quadrature: global data converge and are stable under truncation") {
    QuadratureSpec s;
    s.abs_tol = 1e-9;
    s.rel_tol = 1e-9;
    const BoundaryData g = poly_growth(2, 1.5);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.0, 0.5);
    const double a = solution_u(g, 2, x, s);
    CHECK(std::isfinite(a));
    const BoundaryData decaying = poly_growth(2, -2.5);
    const double n1 = neumann_N(decaying, x, s);
    QuadratureSpec s2 = s;
    s2.truncation_radius = 2.0 * truncation_radius(decaying, node_options({Potential::N, 3, 0, 1.0}, decaying, x.cartesian()), s);
    CHECK(neumann_N(decaying, x, s2) == doctest::Approx(n1).epsilon(1e-8));
}

TEST_CASE("quadrature: second-kind tail identity") {
    const BoundaryData f = exp_decay(2);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 6.0, 0.4);
    const QuadratureSpec s = tight();
    // D - D~_1 = alpha_3 x_n |x|^{-3} int f.
    const double mass = integrate_data(f, [](const double*, double) { return 1.0; }, s, 0).value;
    CHECK(mass == doctest::Approx(2 * kPi).epsilon(1e-9));
    const double diff = dirichlet_D(f, x, s) - dirichlet_D_second(1, f, x, s);
    CHECK(diff == doctest::Approx(alpha_n(3) * x.xn() * std::pow(x.r, -3.0) * mass).epsilon(1e-7));
}

TEST_CASE("quadrature: second-kind integral at large |x| matches the centroid kernel") {
    const BoundaryData f = bump({1.0, 0.0}, 0.3, 1.0, true);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 50 * 0.3 * 4, 0.6);
    const double F = integral_F_second({1.5, 1, KernelKind::second}, f, x, tight());
    const double k = kernel_KM_second({1.5, 1, KernelKind::second}, x, BoundaryPoint{{1.0, 0.0}});
    CHECK(F == doctest::Approx(k).epsilon(1e-3));
}

TEST_CASE("quadrature: tolerance honesty") {
    const BoundaryData f = bump({0.5, 0.5}, 1.0);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.0, 0.5);
    PotentialSpec p;
    p.kind = Potential::N;
    QuadratureSpec s;
    s.abs_tol = 1e-8;
    s.rel_tol = 1e-8;
    const QuadResult a = evaluate(p, f, x, s);
    s.abs_tol = s.rel_tol = 5e-9;
    const QuadResult b = evaluate(p, f, x, s);
    CHECK(std::abs(a.value - b.value) <= std::max(a.error, 1e-14));
}
