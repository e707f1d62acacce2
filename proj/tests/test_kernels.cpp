#include <doctest.h>

#include <cmath>
#include <random>

#include "halfspace/kernels.hpp"

using namespace hs;

namespace {

double taylor_gegenbauer(double lambda, int m, double t) {
    double s = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        const double c = std::exp(std::lgamma(lambda + m - k) - std::lgamma(lambda) - std::lgamma(k + 1.0) -
                                  std::lgamma(m - 2.0 * k + 1.0));
        s += (k % 2 ? -c : c) * std::pow(2.0 * t, m - 2 * k);
    }
    return s;
}

// K minus its first M terms in inverse powers of |y'| (first) or |x| (second).
double subtracted_oracle(double lambda, int M, const HalfSpacePoint& x, const BoundaryPoint& yp, bool second) {
    const auto c = x.cartesian();
    double d2 = c.back() * c.back();
    for (std::size_t i = 0; i < yp.coords.size(); ++i) d2 += (c[i] - yp.coords[i]) * (c[i] - yp.coords[i]);
    const double Th = big_theta(x, yp);
    const double a = second ? yp.norm() : x.r, b = second ? x.r : yp.norm();
    double s = std::pow(d2, -lambda);
    for (int m = 0; m < M; ++m) s -= taylor_gegenbauer(lambda, m, Th) * std::pow(a, m) * std::pow(b, -(m + 2 * lambda));
    return s;
}

}  // namespace

TEST_CASE("kernels: K by direct substitution") {
    const HalfSpacePoint e3 = HalfSpacePoint::polar(3, 1.0, 0.0);
    CHECK(kernel_K(1.5, e3, BoundaryPoint{{1.0, 0.0}}) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
    CHECK(kernel_K(0.5, e3, BoundaryPoint{{0.0, 0.0}}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernels: Cartesian and polar K agree and are positive") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const HalfSpacePoint x = HalfSpacePoint::from_cartesian({U(rng), U(rng), std::abs(U(rng)) + 0.01});
        const BoundaryPoint yp{{U(rng), U(rng)}};
        const double lambda = 0.1 + std::abs(U(rng));
        const double a = kernel_K(lambda, x, yp), b = kernel_K_polar(lambda, x, yp);
        CHECK(a > 0.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("kernels: first kind against the explicit subtraction") {
    const HalfSpacePoint e3 = HalfSpacePoint::polar(3, 1.0, 0.0);
    CHECK(kernel_KM_direct({0.5, 1, KernelKind::first}, e3, BoundaryPoint{{2.0, 0.0}}) ==
          doctest::Approx(1.0 / std::sqrt(5.0) - 0.5).epsilon(1e-13));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double lambda = 0.2 + 2.5 * U(rng);
        const int M = static_cast<int>(5 * U(rng));
        const HalfSpacePoint x = HalfSpacePoint::polar(3, 0.2 + 3 * U(rng), 1.5 * U(rng), {0.6, 0.8});
        const BoundaryPoint yp{{4 * U(rng) - 2, 4 * U(rng) - 2}};
        const KernelParams p{lambda, M, KernelKind::first};
        const double oracle = subtracted_oracle(lambda, M, x, yp, false);
        const double scale = (M ? kernel_bound_first(p, x, yp) : 0.0) + std::abs(oracle) + 1e-300;
        CHECK(kernel_KM_direct(p, x, yp) == doctest::Approx(oracle).epsilon(1e-10).scale(scale));
        if (M == 0) CHECK(kernel_KM_direct(p, x, yp) == kernel_K(lambda, x, yp));
    }
}

TEST_CASE("kernels: series, integral and direct forms agree") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double lambda = 0.3 + 2.2 * U(rng);
        const int M = 1 + static_cast<int>(3 * U(rng));
        const HalfSpacePoint x = HalfSpacePoint::polar(3, 0.1 + U(rng), 1.5 * U(rng), {1.0, 0.0});
        const double ang = 6.283 * U(rng), rho = 2.2 + U(rng);
        const BoundaryPoint yp{{rho * std::cos(ang), rho * std::sin(ang)}};
        const KernelParams p{lambda, M, KernelKind::first};
        const double d = kernel_KM_direct(p, x, yp);
        CHECK(kernel_KM_series(p, x, yp) == doctest::Approx(d).epsilon(1e-10).scale(kernel_K(lambda, x, yp)));
        CHECK(kernel_KM_integral(p, x, yp) == doctest::Approx(d).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("kernels: integral form limits") {
    const HalfSpacePoint tiny = HalfSpacePoint::polar(3, 1e-12, 0.3);
    CHECK(std::abs(kernel_KM_integral({1.5, 2, KernelKind::first}, tiny, BoundaryPoint{{1.0, 0.0}})) < 1e-20);
    for (int M = 1; M <= 3; ++M)
        for (double s : {0.3, 1.0, 2.0}) {
            const HalfSpacePoint x = HalfSpacePoint::polar(3, s, 0.8, {0.6, 0.8});
            const BoundaryPoint yp{{1.0, 0.0}};
            CHECK(kernel_KM_integral_lambda_one(M, x, yp) ==
                  doctest::Approx(kernel_KM_direct({1.0, M, KernelKind::first}, x, yp)).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("kernels: second kind") {
    const HalfSpacePoint e3 = HalfSpacePoint::polar(3, 1.0, 0.0);
    CHECK(std::abs(kernel_KM_second({0.5, 1, KernelKind::second}, e3, BoundaryPoint{{0.0, 0.0}})) < 1e-15);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double lambda = 0.3 + 2.2 * U(rng);
        const int M = 1 + static_cast<int>(3 * U(rng));
        const HalfSpacePoint x = HalfSpacePoint::polar(3, 2 + 10 * U(rng), 1.5 * U(rng), {0.6, 0.8});
        const BoundaryPoint yp{{4 * U(rng) - 2, 4 * U(rng) - 2}};
        const KernelParams p{lambda, M, KernelKind::second};
        const double oracle = subtracted_oracle(lambda, M, x, yp, true);
        const double v = kernel_KM_second(p, x, yp);
        CHECK(v == doctest::Approx(oracle).epsilon(1e-10).scale(std::abs(oracle) + kernel_K(lambda, x, yp)));
        if (yp.norm() < 0.5 * x.r) CHECK(std::abs(v) <= kernel_bound_second(p, x, yp));
    }
}

TEST_CASE("kernels: majorant holds on samples") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double lambda : {0.25, 1.5})
        for (int M = 1; M <= 3; ++M)
            for (int i = 0; i < 3000; ++i) {
                const HalfSpacePoint x = HalfSpacePoint::polar(3, 0.05 + 4 * U(rng), 1.45 * U(rng), {1.0, 0.0});
                const double ang = 6.283 * U(rng), rho = 0.1 + 4 * U(rng);
                const BoundaryPoint yp{{rho * std::cos(ang), rho * std::sin(ang)}};
                const KernelParams p{lambda, M, KernelKind::first};
                CHECK(std::abs(kernel_eval(p, x, yp)) <= kernel_bound_first(p, x, yp) * (1 + 1e-12));
            }
    // Bound vanishes like s^M.
    const KernelParams p{1.5, 2, KernelKind::first};
    const BoundaryPoint yp{{1.0, 0.0}};
    const double b1 = kernel_bound_first(p, HalfSpacePoint::polar(3, 1e-3, 0.5), yp);
    const double b2 = kernel_bound_first(p, HalfSpacePoint::polar(3, 5e-4, 0.5), yp);
    CHECK(b1 / b2 == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("kernels: tail vanishes as M grows and is direction free at theta = 0") {
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 0.5, 0.7, {0.6, 0.8});
    const BoundaryPoint yp{{1.5, 0.2}};
    double prev = std::abs(kernel_eval({1.5, 0, KernelKind::first}, x, yp));
    for (int M = 1; M <= 12; ++M) {
        const double v = std::abs(kernel_eval({1.5, M, KernelKind::first}, x, yp));
        CHECK(v < 1.001 * prev * 1.5);
        prev = v;
    }
    CHECK(prev < 1e-4);
    const HalfSpacePoint axis_a = HalfSpacePoint::polar(3, 0.5, 0.0, {1.0, 0.0});
    const HalfSpacePoint axis_b = HalfSpacePoint::polar(3, 0.5, 0.0, {0.0, 1.0});
    for (int M = 0; M <= 4; ++M)
        CHECK(kernel_eval({1.5, M, KernelKind::first}, axis_a, yp) ==
              doctest::Approx(kernel_eval({1.5, M, KernelKind::first}, axis_b, BoundaryPoint{{-0.2, 1.5}})).epsilon(1e-14));
}

TEST_CASE("kernels: invalid parameters") {
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 1.0, 0.3);
    CHECK_THROWS(kernel_eval({0.0, 1, KernelKind::first}, x, BoundaryPoint{{1.0, 0.0}}));
    CHECK_THROWS(kernel_eval({1.0, 0, KernelKind::second}, x, BoundaryPoint{{1.0, 0.0}}));
    CHECK_THROWS(kernel_KM_direct({1.0, 2, KernelKind::first}, x, BoundaryPoint{{0.0, 0.0}}));
}
