#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "halfspace/gegenbauer.hpp"

using namespace hs;

namespace {

// Taylor coefficient of (1 - 2tz + z^2)^{-lambda} from the double binomial expansion.
double taylor_oracle(double lambda, int m, double t) {
    double s = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        double c = std::tgamma(lambda + m - k) / (std::tgamma(lambda) * std::tgamma(k + 1.0) * std::tgamma(m - 2.0 * k + 1.0));
        s += (k % 2 ? -c : c) * std::pow(2.0 * t, m - 2 * k);
    }
    return s;
}

double legendre(int m, double t) {
    double p0 = 1.0, p1 = t;
    if (m == 0) return p0;
    for (int k = 1; k < m; ++k) {
        const double p2 = ((2 * k + 1) * t * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

TEST_CASE("gegenbauer: low degrees") {
    CHECK(gegenbauer(0.7, 0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gegenbauer(0.7, 1, 0.3) == doctest::Approx(0.42).epsilon(1e-14));
    CHECK(gegenbauer(0.5, 2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK(gegenbauer(1.0, 3, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(gegenbauer(1.3, -1, 0.2) == 0.0);
    CHECK(gegenbauer(1.3, -4, 0.9) == 0.0);
}

TEST_CASE("gegenbauer: lambda = 1/2 is Legendre, lambda = 1 is Chebyshev U") {
    for (int m = 0; m <= 15; ++m)
        for (double t = -1.0; t <= 1.0; t += 0.05) {
            CHECK(gegenbauer(0.5, m, t) == doctest::Approx(legendre(m, t)).epsilon(1e-12));
            const double phi = std::acos(std::clamp(t, -1.0, 1.0));
            if (std::sin(phi) > 1e-3)
                CHECK(gegenbauer(1.0, m, t) ==
                      doctest::Approx(std::sin((m + 1) * phi) / std::sin(phi)).epsilon(1e-10));
        }
}

TEST_CASE("gegenbauer: recurrence against the Taylor oracle") {
    for (double lambda : {0.25, 0.5, 1.0, 1.5, 2.5, 4.0})
        for (int m = 0; m <= 12; ++m)
            for (double t = -1.0; t <= 1.0001; t += 0.1)
                CHECK(gegenbauer(lambda, m, t) ==
                      doctest::Approx(taylor_oracle(lambda, m, t)).epsilon(1e-10).scale(eval_at_one({lambda, m})));
}

TEST_CASE("gegenbauer: gegenbauer_all matches single evaluations") {
    std::vector<double> out(11);
    gegenbauer_all(1.7, 10, -0.35, out.data());
    for (int m = 0; m <= 10; ++m) CHECK(out[m] == doctest::Approx(gegenbauer(1.7, m, -0.35)).epsilon(1e-15));
}

TEST_CASE("gegenbauer: value at one") {
    CHECK(eval_at_one({1.5, 0}) == 1.0);
    CHECK(eval_at_one({1.0, 3}) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(eval_at_one({0.5, 4}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_at_one({0.3, -2}) == 0.0);
    for (double lambda : {0.5, 1.25, 3.0})
        for (int m = 0; m <= 20; ++m)
            CHECK(eval_at_one({lambda, m}) == doctest::Approx(gegenbauer(lambda, m, 1.0)).epsilon(1e-12));
    // Large arguments stay finite.
    CHECK(std::isfinite(eval_at_one({40.0, 200})));
}

TEST_CASE("gegenbauer: derivative") {
    CHECK(derivative({0.5, 0}, 0.9) == 0.0);
    CHECK(derivative({0.5, 1}, 0.2) == doctest::Approx(1.0).epsilon(1e-14));
    const double h = 1e-5;
    for (double lambda : {0.5, 1.0, 2.5})
        for (int m = 1; m <= 8; ++m)
            for (double t : {-0.8, -0.1, 0.4, 0.9}) {
                const double fd = (gegenbauer(lambda, m, t + h) - gegenbauer(lambda, m, t - h)) / (2 * h);
                CHECK(derivative({lambda, m}, t) == doctest::Approx(fd).epsilon(1e-6).scale(eval_at_one({lambda + 1, m - 1})));
            }
}

TEST_CASE("gegenbauer: generating function") {
    CHECK(generating_function_partial_sum(2.0, 0.5, 0.0, 5) == doctest::Approx(1.0));
    CHECK(generating_function_partial_sum(1.5, 1.0, 0.5, 200) == doctest::Approx(8.0).epsilon(1e-8));
    CHECK(generating_function_partial_sum(0.5, -0.3, 0.4, 200) ==
          doctest::Approx(std::pow(1.4, -0.5)).epsilon(1e-8));
    CHECK(generating_function(1.5, 1.0, 0.5) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("gegenbauer: roots") {
    auto r1 = roots({0.7, 1});
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    auto r2 = roots({0.5, 2});
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(r2[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
    auto r3 = roots({1.0, 3});
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-13));
    CHECK(std::abs(r3[1]) < 1e-14);
    CHECK(r3[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    // Largest zero lies in the classical bracket.
    for (double lambda : {0.5, 1.0})
        for (int M = 1; M <= 10; ++M) {
            const auto r = roots({lambda, M});
            REQUIRE(static_cast<int>(r.size()) == M);
            CHECK(r.back() >= std::cos(std::numbers::pi / (M + 1)) - 1e-12);
            CHECK(r.back() <= std::cos(std::numbers::pi / (2 * M)) + 1e-12);
            for (double z : r) CHECK(std::abs(gegenbauer(lambda, M, z)) < 1e-10 * eval_at_one({lambda, M}));
        }
}

TEST_CASE("gegenbauer: phi_pm") {
    CHECK(phi_pm(1.0, 1, 0.5, 0.0, Sign::minus) == doctest::Approx(1.0));
    CHECK(phi_pm(1.0, 1, 0.5, 2.0, Sign::minus) == doctest::Approx(-3.0));
    CHECK(phi_pm(1.0, 1, 0.5, 2.0, Sign::plus) == doctest::Approx(5.0));
}

TEST_CASE("gegenbauer: properties on a grid") {
    for (double lambda : {0.5, 1.0, 1.5, 2.5})
        for (int m = 0; m <= 12; ++m) {
            const double c1 = eval_at_one({lambda, m});
            for (int i = 0; i <= 100; ++i) {
                const double t = -1.0 + 0.02 * i;
                const double v = gegenbauer(lambda, m, t);
                CHECK(gegenbauer(lambda, m, -t) == doctest::Approx((m % 2 ? -1.0 : 1.0) * v).epsilon(1e-12).scale(c1));
                CHECK(std::abs(v) <= c1 * (1 + 1e-14));
            }
            if (m % 2 == 0) CHECK(((m / 2) % 2 ? -1.0 : 1.0) * gegenbauer(lambda, m, 0.0) > 0.0);
        }
}

TEST_CASE("gegenbauer: binomial with real top") {
    CHECK(binom_real(5.0, 2) == doctest::Approx(10.0));
    CHECK(binom_real(2.5, 0) == 1.0);
    CHECK(binom_real(0.5, 2) == doctest::Approx(-0.125));
}
